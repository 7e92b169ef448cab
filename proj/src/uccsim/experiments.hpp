#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace uccsim {

/// One-line summary plus whether the checked guarantee held.
struct ExperimentOutcome {
  std::string summary;
  bool valid = true;
};

/// "%.17g"; the same double always prints the same text.
std::string format_number(double v);

struct UncertainRunConfig {
  int n = 8;
  int k = 2;
  double eps = 0.0;
  double delta = 0.05;
  double theta = 0.3;
  std::uint64_t trials = 1000;
  std::uint64_t seed = 0;
  std::string mu = "product";
  int jobs = 1;
  double c1 = 4.0;
};

/// Generates one instance from the seed and runs Algorithm 1 on fresh inputs.
/// CSV columns: trial, x, y, output, truth, correct, bits, sampling_ok. Valid
/// when the error rate is at most eps + 2 delta + theta + the Wilson 95%
/// half-width.
ExperimentOutcome uncertain_run(const UncertainRunConfig& config, std::ostream& csv);

struct CsampleCase {
  std::string name;
  std::vector<double> p;
  std::vector<double> q;
};

/// Six (P, Q) pairs over a universe of the given size (a multiple of 16).
std::vector<CsampleCase> csample_grid(std::size_t universe);

struct CsampleBenchConfig {
  std::size_t universe = 16;
  double eps = 0.1;
  std::uint64_t trials = 1000;
  std::uint64_t seed = 0;
  int jobs = 1;
};

/// Interactive correlated sampling over csample_grid. CSV columns: case,
/// seed, D_PQ_bits, eps, bits_alice, rounds, success. The summary reports the
/// largest C = mean bits / (D + 2 log2(1/eps) + sqrt(D) + 1).
ExperimentOutcome csample_bench(const CsampleBenchConfig& config, std::ostream& csv);

struct LowerboundSweepConfig {
  std::vector<double> p_grid;
  std::vector<int> n_grid;
  double eps = 0.1;
  std::uint64_t seed = 0;
  int restarts = 64;
  int jobs = 1;
};

/// CSV columns: p, n, spectral_bound, spectral_bound_log2, disc_exact,
/// disc_lower_estimate, cc_lb_bits. disc_exact is filled for n = 1 and the
/// randomized rectangle estimate for 2 <= n <= 5.
ExperimentOutcome lowerbound_sweep(const LowerboundSweepConfig& config, std::ostream& csv);

struct AgreementAuditConfig {
  int size_y = 10;
  double delta2 = 0.2;
  std::string strategy = "example";  // "identity", "example" or a JSON path
};

/// CSV columns: size_y, delta2, radius, strategy, min_entropy, required,
/// distinct_outputs, passed.
ExperimentOutcome agreement_audit(const AgreementAuditConfig& config, std::ostream& csv);

struct OracleCcConfig {
  std::string function;
  std::string mu;
  double eps = 0.0;
  int n = -1;
};

/// CSV columns: function, mu, eps, bits. The summary is the bare bit count.
ExperimentOutcome oracle_cc(const OracleCcConfig& config, std::ostream& csv);

struct FamilyAuditConfig {
  int n = 60;
  double p = 0.1;
  double q = 0.2;
  std::uint64_t samples = 10000;
  std::uint64_t seed = 0;
};

/// Samples (S, T) ~ D_q. CSV columns: sample, S, T, sym_diff, in_family,
/// distance, pqn. Valid when every member satisfies the pqn bound, the
/// non-membership rate is within its Chernoff bound plus the Wilson
/// half-width, and (for n <= 6) both parity protocols are exact.
ExperimentOutcome family_audit(const FamilyAuditConfig& config, std::ostream& csv);

}  // namespace uccsim
