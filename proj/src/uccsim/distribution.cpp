#include "uccsim/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "uccsim/error.hpp"

namespace uccsim {

namespace {

constexpr double kMassTolerance = 1e-12;
constexpr int kMaxDenseConditionalBits = 20;

std::vector<double> cumulative(std::span<const double> probs) {
  std::vector<double> cdf(probs.size());
  std::partial_sum(probs.begin(), probs.end(), cdf.begin());
  return cdf;
}

std::uint64_t sample_cdf(const std::vector<double>& cdf, double r) {
  // r is scaled by the total so tiny normalization error never overruns.
  const double target = r * cdf.back();
  auto it = std::upper_bound(cdf.begin(), cdf.end(), target);
  if (it == cdf.end()) --it;
  return static_cast<std::uint64_t>(it - cdf.begin());
}

void check_probability(double p) {
  require(p >= 0.0 && p <= 1.0, ErrorCode::InvalidArgument,
          "probability must lie in [0, 1]");
}

std::vector<double> hypercube_weight_masses(int n, double p) {
  std::vector<double> w(static_cast<std::size_t>(n) + 1);
  const double base = std::ldexp(1.0, -n);
  for (int k = 0; k <= n; ++k) {
    w[static_cast<std::size_t>(k)] =
        base * std::pow(p, k) * std::pow(1.0 - p, n - k);
  }
  return w;
}

}  // namespace

// ---------------------------------------------------------------------------
// ConditionalDistribution

ConditionalDistribution ConditionalDistribution::dense(int y_bits,
                                                       std::vector<double> probs) {
  require(probs.size() == (std::uint64_t{1} << y_bits), ErrorCode::DomainMismatch,
          "conditional vector size does not match y_bits");
  ConditionalDistribution c;
  c.y_bits_ = y_bits;
  c.cdf_ = cumulative(probs);
  c.probs_ = std::move(probs);
  return c;
}

ConditionalDistribution ConditionalDistribution::noisy_copy(int n, std::uint64_t x,
                                                            double p) {
  check_probability(p);
  ConditionalDistribution c;
  c.y_bits_ = n;
  c.implicit_ = true;
  c.center_ = x;
  c.flip_ = p;
  return c;
}

double ConditionalDistribution::prob(std::uint64_t y) const {
  if (!implicit_) return probs_[y];
  const int d = std::popcount(y ^ center_);
  return std::pow(flip_, d) * std::pow(1.0 - flip_, y_bits_ - d);
}

std::uint64_t ConditionalDistribution::sample(Rng& rng) const {
  if (implicit_) return sample_noisy_copy(y_bits_, center_, flip_, rng);
  return sample_cdf(cdf_, rng.uniform());
}

std::vector<double> ConditionalDistribution::to_vector() const {
  if (!implicit_) return probs_;
  require(y_bits_ <= kMaxDenseConditionalBits, ErrorCode::TooLarge,
          "conditional too large to materialize");
  std::vector<double> v(std::uint64_t{1} << y_bits_);
  for (std::uint64_t y = 0; y < v.size(); ++y) v[y] = prob(y);
  return v;
}

// ---------------------------------------------------------------------------
// JointDistribution

JointDistribution JointDistribution::dense(Domain domain, std::vector<double> masses) {
  require(domain.x_bits >= 0 && domain.y_bits >= 0 &&
              domain.x_bits <= kMaxTableBitsPerSide &&
              domain.y_bits <= kMaxTableBitsPerSide,
          ErrorCode::TooLarge, "dense distribution exceeds 14 bits per side");
  require(masses.size() == domain.size(), ErrorCode::DomainMismatch,
          "mass table size does not match domain");
  double total = 0.0;
  for (double m : masses) {
    require(std::isfinite(m) && m >= 0.0, ErrorCode::InvalidArgument,
            "masses must be finite and non-negative");
    total += m;
  }
  require(std::abs(total - 1.0) <= kMassTolerance, ErrorCode::InvalidArgument,
          "masses must sum to 1");

  JointDistribution mu(Kind::Dense, domain);
  std::vector<double> rows(domain.x_size(), 0.0);
  for (std::uint64_t x = 0; x < domain.x_size(); ++x) {
    for (std::uint64_t y = 0; y < domain.y_size(); ++y) {
      rows[x] += masses[domain.index(x, y)];
    }
  }
  mu.cdf_ = std::make_shared<const std::vector<double>>(cumulative(masses));
  mu.row_mass_ = std::make_shared<const std::vector<double>>(std::move(rows));
  mu.masses_ = std::make_shared<const std::vector<double>>(std::move(masses));
  return mu;
}

JointDistribution JointDistribution::noisy_hypercube(int n, double p) {
  require(n >= 1 && n <= 63, ErrorCode::InvalidArgument,
          "noisy hypercube dimension must be in [1, 63]");
  check_probability(p);
  JointDistribution mu(Kind::NoisyHypercube, Domain::hypercube(n));
  mu.noise_ = p;
  mu.weight_mass_ = hypercube_weight_masses(n, p);
  return mu;
}

JointDistribution JointDistribution::uniform_product(int n) {
  require(n >= 1 && n <= 63, ErrorCode::InvalidArgument,
          "product dimension must be in [1, 63]");
  JointDistribution mu(Kind::UniformProduct, Domain::hypercube(n));
  mu.noise_ = 0.5;
  mu.weight_mass_ = hypercube_weight_masses(n, 0.5);
  return mu;
}

const std::vector<double>& JointDistribution::dense_masses() const {
  require(kind_ == Kind::Dense, ErrorCode::InvalidArgument,
          "distribution is not dense");
  return *masses_;
}

std::vector<double> JointDistribution::marginal_x() const {
  if (kind_ == Kind::Dense) return *row_mass_;
  require(domain_.x_bits <= kMaxDenseConditionalBits, ErrorCode::TooLarge,
          "marginal too large to materialize");
  return std::vector<double>(domain_.x_size(), std::ldexp(1.0, -domain_.x_bits));
}

std::vector<double> JointDistribution::marginal_y() const {
  if (kind_ != Kind::Dense) {
    require(domain_.y_bits <= kMaxDenseConditionalBits, ErrorCode::TooLarge,
            "marginal too large to materialize");
    return std::vector<double>(domain_.y_size(), std::ldexp(1.0, -domain_.y_bits));
  }
  std::vector<double> cols(domain_.y_size(), 0.0);
  for (std::uint64_t x = 0; x < domain_.x_size(); ++x) {
    for (std::uint64_t y = 0; y < domain_.y_size(); ++y) {
      cols[y] += (*masses_)[domain_.index(x, y)];
    }
  }
  return cols;
}

double JointDistribution::marginal_x_mass(std::uint64_t x) const {
  if (kind_ == Kind::Dense) return (*row_mass_)[x];
  return std::ldexp(1.0, -domain_.x_bits);
}

ConditionalDistribution JointDistribution::conditional_y_given_x(std::uint64_t x) const {
  require(x < domain_.x_size(), ErrorCode::DomainMismatch, "x outside domain");
  if (kind_ != Kind::Dense) {
    return ConditionalDistribution::noisy_copy(domain_.y_bits, x, noise_);
  }
  const double row = (*row_mass_)[x];
  if (!(row > 0.0)) fail(ErrorCode::Undefined, "undefined conditional: mu_X(x) = 0");
  std::vector<double> probs(domain_.y_size());
  for (std::uint64_t y = 0; y < domain_.y_size(); ++y) {
    probs[y] = (*masses_)[domain_.index(x, y)] / row;
  }
  return ConditionalDistribution::dense(domain_.y_bits, std::move(probs));
}

ConditionalDistribution JointDistribution::conditional_y_given_x(const BitString& x) const {
  require(x.size() == domain_.x_bits, ErrorCode::DomainMismatch,
          "x length does not match domain");
  return conditional_y_given_x(x.value());
}

std::pair<std::uint64_t, std::uint64_t> JointDistribution::sample(Rng& rng) const {
  if (kind_ == Kind::Dense) {
    const std::uint64_t idx = sample_cdf(*cdf_, rng.uniform());
    return {idx >> domain_.y_bits, idx & (domain_.y_size() - 1)};
  }
  const std::uint64_t x = rng.bits(domain_.x_bits);
  return {x, sample_noisy_copy(domain_.y_bits, x, noise_, rng)};
}

JointDistribution JointDistribution::materialize() const {
  if (kind_ == Kind::Dense) return *this;
  require(domain_.x_bits <= 7, ErrorCode::TooLarge,
          "implicit distributions materialize only for n <= 7");
  std::vector<double> masses(domain_.size());
  for (std::uint64_t x = 0; x < domain_.x_size(); ++x) {
    for (std::uint64_t y = 0; y < domain_.y_size(); ++y) {
      masses[domain_.index(x, y)] = mass(x, y);
    }
  }
  // Re-normalize away the last-ulp drift of the closed-form masses.
  const double total = std::accumulate(masses.begin(), masses.end(), 0.0);
  for (double& m : masses) m /= total;
  return dense(domain_, std::move(masses));
}

bool JointDistribution::is_product() const {
  if (kind_ == Kind::UniformProduct) return true;
  if (kind_ == Kind::NoisyHypercube) return noise_ == 0.5;
  const auto mx = marginal_x();
  const auto my = marginal_y();
  for (std::uint64_t x = 0; x < domain_.x_size(); ++x) {
    for (std::uint64_t y = 0; y < domain_.y_size(); ++y) {
      if (std::abs((*masses_)[domain_.index(x, y)] - mx[x] * my[y]) > 1e-12) return false;
    }
  }
  return true;
}

std::vector<SamplingFactor> JointDistribution::sampling_factors() const {
  std::vector<SamplingFactor> factors;
  if (kind_ != Kind::Dense) {
    // mu_{Y|x} is a product of n independent bits.
    const double envelope =
        kind_ == Kind::UniformProduct ? 1.0 : 2.0 * std::max(noise_, 1.0 - noise_);
    for (int b = 0; b < domain_.y_bits; ++b) {
      SamplingFactor f;
      f.universe = 2;
      f.stride = std::uint64_t{1} << b;
      f.reference = {0.5, 0.5};
      f.envelope = envelope;
      factors.push_back(std::move(f));
    }
    return factors;
  }
  SamplingFactor f;
  f.universe = domain_.y_size();
  f.stride = 1;
  f.reference = marginal_y();
  double envelope = 0.0;
  for (std::uint64_t x = 0; x < domain_.x_size(); ++x) {
    const double row = (*row_mass_)[x];
    if (!(row > 0.0)) continue;
    for (std::uint64_t y = 0; y < domain_.y_size(); ++y) {
      const double m = (*masses_)[domain_.index(x, y)];
      if (m > 0.0) envelope = std::max(envelope, m / (row * f.reference[y]));
    }
  }
  f.envelope = std::max(envelope, 1.0);
  factors.push_back(std::move(f));
  return factors;
}

void JointDistribution::factor_conditional(std::size_t index, std::uint64_t x,
                                           std::vector<double>& out) const {
  if (kind_ != Kind::Dense) {
    const bool bit = (x >> index) & 1U;
    out.assign(2, noise_);
    out[bit ? 1 : 0] = 1.0 - noise_;
    return;
  }
  const double row = (*row_mass_)[x];
  if (!(row > 0.0)) fail(ErrorCode::Undefined, "undefined conditional: mu_X(x) = 0");
  out.resize(domain_.y_size());
  for (std::uint64_t y = 0; y < domain_.y_size(); ++y) {
    out[y] = (*masses_)[domain_.index(x, y)] / row;
  }
}

// ---------------------------------------------------------------------------
// Sampling and information measures

std::uint64_t sample_noisy_copy(int n, std::uint64_t x, double p, Rng& rng) {
  check_probability(p);
  std::uint64_t y = x;
  for (int i = 0; i < n; ++i) {
    if (rng.uniform() < p) y ^= std::uint64_t{1} << i;
  }
  return y;
}

BitString sample_noisy_copy(const BitString& x, double p, Rng& rng) {
  return BitString(x.size(), sample_noisy_copy(x.size(), x.value(), p, rng));
}

double binary_entropy(double x) {
  require(x >= 0.0 && x <= 1.0, ErrorCode::InvalidArgument,
          "binary entropy argument must lie in [0, 1]");
  if (x == 0.0 || x == 1.0) return 0.0;
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

double kl_divergence(std::span<const double> p, std::span<const double> q) {
  require(p.size() == q.size(), ErrorCode::DomainMismatch,
          "distributions over different universes");
  double d = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    if (!(q[i] > 0.0)) {
      fail(ErrorCode::Undefined, "support of P is not contained in support of Q");
    }
    d += p[i] * std::log2(p[i] / q[i]);
  }
  return std::max(d, 0.0);
}

double mutual_information(const JointDistribution& mu) {
  switch (mu.kind()) {
    case JointDistribution::Kind::UniformProduct:
      return 0.0;
    case JointDistribution::Kind::NoisyHypercube:
      return mu.domain().x_bits * (1.0 - binary_entropy(mu.noise()));
    case JointDistribution::Kind::Dense:
      break;
  }
  const auto& masses = mu.dense_masses();
  const auto mx = mu.marginal_x();
  const auto my = mu.marginal_y();
  const Domain& d = mu.domain();
  double info = 0.0;
  for (std::uint64_t x = 0; x < d.x_size(); ++x) {
    for (std::uint64_t y = 0; y < d.y_size(); ++y) {
      const double m = masses[d.index(x, y)];
      if (m > 0.0) info += m * std::log2(m / (mx[x] * my[y]));
    }
  }
  return std::max(info, 0.0);
}

}  // namespace uccsim
