#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "uccsim/rng.hpp"

namespace uccsim {

/// Truth table Y -> {0,1} of a function that ignores Alice's input.
using BobOnlyFunction = std::vector<std::uint8_t>;

/// f' uniform over {0,1}^|Y|, g' a per-coordinate rho-flip of f'.
std::pair<BobOnlyFunction, BobOnlyFunction> sample_D_rho(std::size_t size_y, double rho,
                                                         Rng& rng);

/// Fraction of coordinates where the two tables differ.
double relative_distance(const BobOnlyFunction& a, const BobOnlyFunction& b);

/// sum_{i <= radius} C(size_y, i), exact for size_y <= 62.
std::uint64_t hamming_ball_size(int size_y, int radius);

/// -log2 of the largest mass.
double min_entropy(std::span<const double> dist);

/// Zero-communication strategy for the agreement game on |Y| <= 20: maps the
/// table f' (as an integer, coordinate 1 = bit 0) to Alice's output q_A.
struct AgreementStrategy {
  std::string name;
  std::function<std::uint32_t(std::uint32_t)> map;

  static AgreementStrategy identity();
  static AgreementStrategy constant(std::uint32_t value);
  /// Nearest codeword within Hamming distance `radius` (lowest index on ties);
  /// inputs farther than that from every codeword are returned unchanged.
  static AgreementStrategy nearest_codeword(std::vector<std::uint32_t> code, int radius);
  static AgreementStrategy table(std::vector<std::uint32_t> outputs);
};

/// Span of the rows of a binary generator matrix; rows are |Y|-bit words.
std::vector<std::uint32_t> linear_code(std::span<const std::uint32_t> generator);

/// Fixed [10, 4] linear code (16 words) used by the nearest-codeword example.
std::vector<std::uint32_t> example_code_10_4();

struct EntropyAudit {
  int size_y = 0;
  double delta2 = 0.0;
  int radius = 0;             // floor(delta2 |Y|)
  double min_entropy = 0.0;   // H_inf of q_A under uniform f'
  double required = 0.0;      // (1 - h(delta2)) |Y|
  std::uint64_t distinct_outputs = 0;
  bool passed = false;
};

/// Enumerates all f' in {0,1}^|Y|, checks delta(f', q_A) <= delta2 for each
/// (throwing a validation error naming the first violating f') and reports
/// H_inf(q_A) against (1 - h(delta2)) |Y|.
EntropyAudit agreement_entropy_audit(int size_y, const AgreementStrategy& strategy,
                                     double delta2);

enum class ChernoffKind { LowerTail, UpperTail, Additive };

/// Lower tail Pr[X < (1-d) mu] <= exp(-d^2 mu / 2), upper tail
/// Pr[X > (1+d) mu] <= exp(-d^2 mu / 3) for d in [0, 1], and additive
/// Pr[X > mu + a] <= exp(-2 a^2 / n) for a >= 0.
double chernoff_bound(int n, double mean, ChernoffKind kind, double param);

/// Empirical Pr of the matching tail event for Binomial(n, mean / n).
double chernoff_tail_frequency(int n, double mean, ChernoffKind kind, double param,
                               int samples, Rng& rng);

std::string to_string(ChernoffKind kind);

}  // namespace uccsim
