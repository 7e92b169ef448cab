#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "uccsim/bits.hpp"
#include "uccsim/rng.hpp"

namespace uccsim {

/// mu_{Y|x}: either a dense vector over Y or the implicit law of a p-noisy
/// copy of x (each bit flipped independently with probability p).
class ConditionalDistribution {
 public:
  static ConditionalDistribution dense(int y_bits, std::vector<double> probs);
  static ConditionalDistribution noisy_copy(int n, std::uint64_t x, double p);

  int y_bits() const noexcept { return y_bits_; }
  double prob(std::uint64_t y) const;
  std::uint64_t sample(Rng& rng) const;
  /// Dense vector over Y; implicit forms are materialized (y_bits <= 20).
  std::vector<double> to_vector() const;

 private:
  ConditionalDistribution() = default;

  int y_bits_ = 0;
  bool implicit_ = false;
  std::uint64_t center_ = 0;
  double flip_ = 0.0;
  std::vector<double> probs_;
  std::vector<double> cdf_;
};

/// One independent component of mu_{Y|x}, as used by one-way correlated
/// sampling. `reference` is the public marginal of the component and
/// `envelope` bounds the ratio conditional/reference uniformly over x, so both
/// parties can compute it without seeing x.
struct SamplingFactor {
  std::uint64_t universe = 0;
  std::uint64_t stride = 1;  // y = sum of value * stride over factors
  std::vector<double> reference;
  double envelope = 1.0;

  bool independent_of_x() const noexcept { return envelope <= 1.0 + 1e-12; }
};

/// Joint distribution over X x Y.
///
/// Dense tables hold every mass explicitly. The implicit kinds describe the
/// noisy hypercube mu_p (x uniform, y a p-noisy copy of x) and the uniform
/// product distribution on {0,1}^n x {0,1}^n; they sample, condition and
/// evaluate masses without any table.
class JointDistribution {
 public:
  enum class Kind { Dense, NoisyHypercube, UniformProduct };

  static JointDistribution dense(Domain domain, std::vector<double> masses);
  static JointDistribution noisy_hypercube(int n, double p);
  static JointDistribution uniform_product(int n);

  Kind kind() const noexcept { return kind_; }
  const Domain& domain() const noexcept { return domain_; }
  /// Flip probability p for the noisy hypercube (0.5 for uniform product).
  double noise() const noexcept { return noise_; }

  double mass(std::uint64_t x, std::uint64_t y) const {
    if (kind_ == Kind::Dense) return (*masses_)[domain_.index(x, y)];
    return weight_mass_[static_cast<std::size_t>(std::popcount(x ^ y))];
  }

  std::vector<double> marginal_x() const;
  std::vector<double> marginal_y() const;
  double marginal_x_mass(std::uint64_t x) const;

  ConditionalDistribution conditional_y_given_x(std::uint64_t x) const;
  ConditionalDistribution conditional_y_given_x(const BitString& x) const;

  std::pair<std::uint64_t, std::uint64_t> sample(Rng& rng) const;

  /// Dense copy. Implicit kinds materialize only for n <= 7.
  JointDistribution materialize() const;

  bool is_product() const;

  /// Independent components of mu_{Y|x} with their public envelopes.
  std::vector<SamplingFactor> sampling_factors() const;
  /// The x-dependent component law P_x for factor `index`.
  void factor_conditional(std::size_t index, std::uint64_t x,
                          std::vector<double>& out) const;

  const std::vector<double>& dense_masses() const;

 private:
  JointDistribution(Kind kind, Domain domain) : kind_(kind), domain_(domain) {}

  Kind kind_;
  Domain domain_;
  double noise_ = 0.0;
  std::shared_ptr<const std::vector<double>> masses_;
  std::shared_ptr<const std::vector<double>> cdf_;
  std::shared_ptr<const std::vector<double>> row_mass_;
  std::vector<double> weight_mass_;  // implicit kinds: mass by |x xor y|
};

/// y with each bit of x flipped independently with probability p.
BitString sample_noisy_copy(const BitString& x, double p, Rng& rng);
std::uint64_t sample_noisy_copy(int n, std::uint64_t x, double p, Rng& rng);

/// h(x) = -x log2 x - (1-x) log2 (1-x), with h(0) = h(1) = 0.
double binary_entropy(double x);

/// D(P || Q) in bits; throws if P puts mass outside the support of Q.
double kl_divergence(std::span<const double> p, std::span<const double> q);

/// I(X;Y) = D(mu || mu_X x mu_Y) in bits.
double mutual_information(const JointDistribution& mu);

}  // namespace uccsim
