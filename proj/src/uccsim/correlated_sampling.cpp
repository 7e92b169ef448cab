#include "uccsim/correlated_sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "uccsim/error.hpp"

namespace uccsim {

namespace {

constexpr double kProbabilityTolerance = 1e-9;

/// Draws u_i from the public proposal law.
struct Proposal {
  std::uint64_t universe = 0;
  const std::vector<double>* cdf = nullptr;  // nullptr: uniform

  std::uint64_t draw(std::uint64_t word) const {
    if (cdf == nullptr) {
      if (universe == 2) return word >> 63;
      const auto u = static_cast<std::uint64_t>(to_unit(word) * static_cast<double>(universe));
      return std::min(u, universe - 1);
    }
    const double target = to_unit(word) * cdf->back();
    auto it = std::upper_bound(cdf->begin(), cdf->end(), target);
    if (it == cdf->end()) --it;
    return static_cast<std::uint64_t>(it - cdf->begin());
  }
};

struct InstanceSpec {
  std::span<const double> alice_level;  // P / (K R)
  std::span<const double> bob_base;     // Q / (K R)
  Proposal proposal;
  double envelope = 1.0;
  int hash_bits = 0;
  std::uint32_t last_round = 0;
};

/// Alice -> Bob bit budget; the interactive protocol uses an unbounded one.
class Channel {
 public:
  explicit Channel(std::uint64_t budget) : budget_(budget) {}

  /// Sends `bits` bits if they fit. Otherwise the message is cut at the
  /// budget and the channel closes.
  bool transmit(int bits) {
    if (closed_) return false;
    const auto b = static_cast<std::uint64_t>(bits);
    if (budget_ - used_ < b) {
      used_ = budget_;
      closed_ = true;
      return false;
    }
    used_ += b;
    return true;
  }

  std::uint64_t used() const noexcept { return used_; }
  bool closed() const noexcept { return closed_; }

 private:
  std::uint64_t budget_;
  std::uint64_t used_ = 0;
  bool closed_ = false;
};

struct InstanceOutcome {
  std::uint64_t alice = 0;
  std::uint64_t bob = 0;
  std::uint32_t rounds = 0;
  bool decoded = false;
  bool exhausted = false;
};

std::uint64_t candidate(const InstanceSpec& spec, const SharedRandomness& coins,
                        std::uint64_t i) {
  return spec.proposal.draw(coins.proposal_word(i));
}

/// Runs Alice and Bob on one component. Bob reads only the round words that
/// made it through the channel.
InstanceOutcome run_instance(const InstanceSpec& spec, const SharedRandomness& coins,
                             Channel& channel, std::vector<std::uint64_t>& received) {
  InstanceOutcome out;
  const std::uint64_t fallback = candidate(spec, coins, 1);

  std::uint64_t chosen = 0;
  for (std::uint64_t i = 1; i <= kCandidateCap; ++i) {
    const std::uint64_t u = candidate(spec, coins, i);
    if (coins.level(i) < spec.alice_level[u]) {
      chosen = i;
      out.alice = u;
      break;
    }
  }
  if (chosen == 0) {
    out.alice = candidate(spec, coins, kCandidateCap);
    out.bob = fallback;
    out.exhausted = true;
    return out;
  }

  const std::uint64_t mask = spec.hash_bits >= 64
                                 ? ~std::uint64_t{0}
                                 : (std::uint64_t{1} << spec.hash_bits) - 1;
  received.clear();
  for (std::uint32_t t = 0; t <= spec.last_round; ++t) {
    if (!channel.transmit(spec.hash_bits)) break;
    received.push_back(coins.hash_word(chosen, t) & mask);
    ++out.rounds;

    // Bob's side of round t.
    const double scale = std::ldexp(1.0, static_cast<int>(t));
    const std::uint64_t wanted = kept_horizon(t);
    std::uint64_t kept = 0;
    for (std::uint64_t i = 1; kept < wanted; ++i) {
      if (i > kCandidateCap) {
        out.exhausted = true;
        out.bob = fallback;
        return out;
      }
      const std::uint64_t u = candidate(spec, coins, i);
      const double threshold = std::min(1.0, scale * spec.bob_base[u]);
      if (!(coins.level(i) < threshold)) continue;
      ++kept;
      bool match = true;
      for (std::uint32_t r = 0; r <= t && match; ++r) {
        match = (coins.hash_word(i, r) & mask) == received[r];
      }
      if (match) {
        out.bob = u;
        out.decoded = true;
        return out;
      }
    }
  }
  out.exhausted = !channel.closed();
  out.bob = fallback;
  return out;
}

void check_distribution(std::span<const double> p, const char* what) {
  double total = 0.0;
  for (double v : p) {
    require(std::isfinite(v) && v >= 0.0, ErrorCode::InvalidArgument, what);
    total += v;
  }
  require(std::abs(total - 1.0) <= kProbabilityTolerance, ErrorCode::InvalidArgument,
          what);
}

void check_eps(double eps) {
  require(eps > 0.0 && eps < 1.0, ErrorCode::InvalidArgument,
          "error budget must lie in (0, 1)");
}

}  // namespace

int hash_bits_per_round(double eps) {
  check_eps(eps);
  const int bits = static_cast<int>(std::ceil(std::log2(1.0 / eps))) + 2;
  require(bits <= 62, ErrorCode::InvalidArgument, "error budget below 2^-60");
  return bits;
}

std::uint64_t kept_horizon(std::uint32_t round) {
  require(round < 31, ErrorCode::InvalidArgument, "round out of range");
  return std::uint64_t{1} << (2 * round + 1);
}

std::uint32_t final_round(std::span<const double> bob_base, double envelope, double eps) {
  check_eps(eps);
  double smallest = std::numeric_limits<double>::infinity();
  for (double b : bob_base) {
    if (b > 0.0) smallest = std::min(smallest, b);
  }
  require(std::isfinite(smallest), ErrorCode::Undefined, "Q has empty support");
  // Alice accepts each index with probability 1/K, so i* > N has
  // probability (1 - 1/K)^N <= exp(-N / K).
  const double needed = envelope * std::log(4.0 / eps);
  for (std::uint32_t t = 0; t + 1 < kMaxRounds; ++t) {
    const bool saturated = std::ldexp(smallest, static_cast<int>(t)) >= 1.0;
    if (saturated && static_cast<double>(kept_horizon(t)) >= needed) return t;
  }
  return kMaxRounds - 1;
}

CorrelatedSampleResult correlated_sample(std::span<const double> p,
                                         std::span<const double> q, double eps,
                                         const SharedRandomness& shared) {
  require(!p.empty(), ErrorCode::InvalidArgument, "empty universe");
  std::vector<double> uniform(p.size(), 1.0 / static_cast<double>(p.size()));
  return correlated_sample(p, q, uniform, static_cast<double>(p.size()), eps, shared);
}

CorrelatedSampleResult correlated_sample(std::span<const double> p,
                                         std::span<const double> q,
                                         std::span<const double> proposal,
                                         double envelope, double eps,
                                         const SharedRandomness& shared) {
  require(!p.empty() && p.size() == q.size() && p.size() == proposal.size(),
          ErrorCode::DomainMismatch, "P, Q and R must share one universe");
  check_distribution(p, "P must be a probability vector");
  check_distribution(q, "Q must be a probability vector");
  check_distribution(proposal, "R must be a probability vector");
  check_eps(eps);
  require(envelope >= 1.0, ErrorCode::InvalidArgument, "envelope must be >= 1");

  double overlap = 0.0;
  for (std::size_t u = 0; u < p.size(); ++u) overlap += std::min(p[u], q[u]);
  if (!(overlap > 0.0)) fail(ErrorCode::Undefined, "P and Q have disjoint supports");

  std::vector<double> alice_level(p.size(), 0.0);
  std::vector<double> bob_base(p.size(), 0.0);
  bool uniform = true;
  for (std::size_t u = 0; u < p.size(); ++u) {
    uniform = uniform && proposal[u] == proposal[0];
    if (proposal[u] > 0.0) {
      alice_level[u] = p[u] / (envelope * proposal[u]);
      bob_base[u] = q[u] / (envelope * proposal[u]);
    }
    require(p[u] <= envelope * proposal[u] * (1.0 + kProbabilityTolerance) + 1e-15,
            ErrorCode::InvalidArgument, "envelope violated: P > K R");
  }
  std::vector<double> cdf(proposal.size());
  std::partial_sum(proposal.begin(), proposal.end(), cdf.begin());

  InstanceSpec spec;
  spec.alice_level = alice_level;
  spec.bob_base = bob_base;
  spec.proposal.universe = p.size();
  spec.proposal.cdf = uniform ? nullptr : &cdf;
  spec.envelope = envelope;
  spec.hash_bits = hash_bits_per_round(eps);
  spec.last_round = final_round(bob_base, envelope, eps);

  Channel channel(std::numeric_limits<std::uint64_t>::max());
  std::vector<std::uint64_t> received;
  const InstanceOutcome o = run_instance(spec, shared, channel, received);

  CorrelatedSampleResult result;
  result.alice = o.alice;
  result.bob = o.bob;
  result.exhausted = o.exhausted;
  result.stats.rounds = o.rounds;
  result.stats.bits_alice = channel.used();
  result.stats.bits_bob = o.rounds;
  result.stats.success = o.decoded && o.alice == o.bob;
  return result;
}

// ---------------------------------------------------------------------------
// One-way variant

std::uint64_t one_way_budget(double mutual_info, std::size_t m, double eps, double c1) {
  check_eps(eps);
  require(c1 > 0.0, ErrorCode::InvalidArgument, "c1 must be positive");
  const double bits =
      c1 * (static_cast<double>(m) * mutual_info / eps + std::log2(1.0 / eps) / eps);
  require(bits < 9.0e18, ErrorCode::TooLarge, "budget overflows 64 bits");
  return static_cast<std::uint64_t>(std::floor(bits));
}

OneWaySampler::OneWaySampler(const JointDistribution& mu, std::size_t m, double eps,
                             double c1)
    : mu_(mu), m_(m), eps_(eps), factors_(mu.sampling_factors()) {
  check_eps(eps);
  budget_bits_ = one_way_budget(mutual_information(mu), m, eps, c1);
  std::size_t communicating = 0;
  for (const auto& f : factors_) {
    if (!f.independent_of_x()) ++communicating;
  }
  const double instances = static_cast<double>(communicating) * static_cast<double>(m);
  component_eps_ = instances > 0 ? eps / (2.0 * instances) : eps / 2.0;
  hash_bits_ = hash_bits_per_round(component_eps_);

  factor_cdfs_.reserve(factors_.size());
  for (const auto& f : factors_) {
    std::vector<double> cdf(f.reference.size());
    std::partial_sum(f.reference.begin(), f.reference.end(), cdf.begin());
    factor_cdfs_.push_back(std::move(cdf));
  }
}

OneWaySampleResult OneWaySampler::run(std::uint64_t x,
                                      const SharedRandomness& shared) const {
  require(x < mu_.domain().x_size(), ErrorCode::DomainMismatch, "x outside domain");
  if (!(mu_.marginal_x_mass(x) > 0.0)) {
    fail(ErrorCode::Undefined, "undefined conditional: mu_X(x) = 0");
  }

  OneWaySampleResult result;
  result.alice.assign(m_, 0);
  result.bob.assign(m_, 0);
  result.budget_bits = budget_bits_;

  // Per-component tables; the conditional is refreshed per component because
  // it depends on x only through that component.
  struct Prepared {
    std::vector<double> alice_level;
    std::vector<double> bob_base;
    Proposal proposal;
    std::uint32_t last_round = 0;
  };
  std::vector<Prepared> prepared(factors_.size());
  std::vector<double> conditional;
  for (std::size_t f = 0; f < factors_.size(); ++f) {
    const SamplingFactor& factor = factors_[f];
    Prepared& prep = prepared[f];
    bool uniform = true;
    for (double r : factor.reference) uniform = uniform && r == factor.reference[0];
    prep.proposal.universe = factor.universe;
    prep.proposal.cdf = uniform ? nullptr : &factor_cdfs_[f];
    if (factor.independent_of_x()) continue;
    mu_.factor_conditional(f, x, conditional);
    prep.alice_level.assign(factor.universe, 0.0);
    prep.bob_base.assign(factor.universe, 0.0);
    for (std::uint64_t u = 0; u < factor.universe; ++u) {
      const double r = factor.reference[u];
      if (r > 0.0) {
        prep.alice_level[u] = conditional[u] / (factor.envelope * r);
        prep.bob_base[u] = 1.0 / factor.envelope;
      }
    }
    prep.last_round = final_round(prep.bob_base, factor.envelope, component_eps_);
  }

  Channel channel(budget_bits_);
  std::vector<std::uint64_t> received;
  for (std::size_t j = 0; j < m_; ++j) {
    for (std::size_t f = 0; f < factors_.size(); ++f) {
      const SamplingFactor& factor = factors_[f];
      const Prepared& prep = prepared[f];
      const SharedRandomness coins = shared.instance(j, f);
      std::uint64_t a = 0;
      std::uint64_t b = 0;
      if (factor.independent_of_x()) {
        a = b = prep.proposal.draw(coins.proposal_word(1));
      } else {
        InstanceSpec spec;
        spec.alice_level = prep.alice_level;
        spec.bob_base = prep.bob_base;
        spec.proposal = prep.proposal;
        spec.envelope = factor.envelope;
        spec.hash_bits = hash_bits_;
        spec.last_round = prep.last_round;
        const InstanceOutcome o = run_instance(spec, coins, channel, received);
        a = o.alice;
        b = o.bob;
        if (!o.decoded) ++result.failed_instances;
      }
      result.alice[j] += a * factor.stride;
      result.bob[j] += b * factor.stride;
    }
  }

  result.payload_bits = channel.used();
  result.truncated = channel.closed();
  result.stats.bits_alice = result.payload_bits;
  result.stats.bits_bob = 0;
  result.stats.rounds = 1;
  result.stats.success = result.agreed();
  return result;
}

OneWaySampleResult one_way_correlated_sample(const JointDistribution& mu,
                                             const BitString& x, std::size_t m,
                                             double eps,
                                             const SharedRandomness& shared,
                                             double c1) {
  require(x.size() == mu.domain().x_bits, ErrorCode::DomainMismatch,
          "x length does not match distribution");
  return OneWaySampler(mu, m, eps, c1).run(x.value(), shared);
}

}  // namespace uccsim
