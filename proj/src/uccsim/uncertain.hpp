#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "uccsim/correlated_sampling.hpp"
#include "uccsim/distribution.hpp"
#include "uccsim/function.hpp"
#include "uccsim/rng.hpp"

namespace uccsim {

/// Smallest m with 2^k exp(-theta^2 m / 75) <= 2 theta / 5.
std::uint64_t choose_m(int k, double theta);

/// Error parameter (theta / 10)^2 handed to one-way correlated sampling.
double sampling_error(double theta);

/// Alice knows f, Bob knows g and a k-bit one-way protocol for g.
struct UncertainInstance {
  JointDistribution mu;
  std::shared_ptr<const OneWayProtocol> g_protocol;
  BoolFunction g;
  BoolFunction f;
  double delta = 0.0;
  double eps = 0.0;
  int k = 0;

  /// Throws a validation error unless distance_mu(f, g) <= delta and the
  /// protocol errs on at most eps mass of g, both measured exactly.
  void certify() const;
};

/// Random member of owF_{k, eps, delta}(mu) over {0,1}^n x {0,1}^n.
///
/// pi maps X uniformly into L = 2^k messages and every decider bit is a fair
/// coin. g is the protocol's function with its lowest-mass points (ties by
/// index) flipped while the flipped mass stays <= eps. f is g with points
/// drawn from mu flipped while the flipped mass stays <= delta; the search
/// stops after 64 consecutive draws that do not fit.
UncertainInstance generate_instance(const JointDistribution& mu, int n, int k,
                                    double eps, double delta, Rng& rng);

struct RunResult {
  bool output = false;
  bool truth = false;  // g(x, y)
  std::uint64_t m = 0;
  std::uint64_t payload_bits = 0;
  std::uint64_t bits = 0;  // payload_bits + m
  std::vector<double> err;  // err_i for i in [0, L)
  std::uint32_t i_min = 0;
  bool sampling_ok = false;
  bool truncated = false;
};

/// Algorithm 1 for a fixed instance and slack theta.
class Algorithm1 {
 public:
  Algorithm1(const UncertainInstance& instance, double theta, double c1 = 4.0);

  std::uint64_t m() const noexcept { return m_; }
  const OneWaySampler& sampler() const noexcept { return sampler_; }

  /// (1) one-way correlated sampling of y_1..y_m ~ mu_{Y|x};
  /// (2) Alice sends f_x on her samples; (3) Bob scores every decider on his
  /// samples and answers with the lowest-index minimizer.
  RunResult run(std::uint64_t x, std::uint64_t y, const SharedRandomness& shared) const;

 private:
  const UncertainInstance* instance_;
  std::uint64_t m_;
  OneWaySampler sampler_;
  std::vector<std::uint32_t> decider_masks_;  // bit i = B_i(y)
};

RunResult run_algorithm1(const UncertainInstance& instance, const BitString& x,
                         const BitString& y, double theta,
                         const SharedRandomness& shared);

struct TrialRecord {
  std::uint64_t trial = 0;
  std::uint64_t x = 0;
  std::uint64_t y = 0;
  bool output = false;
  bool truth = false;
  std::uint64_t bits = 0;
  bool sampling_ok = false;
};

struct ErrorEstimate {
  std::uint64_t trials = 0;
  std::uint64_t errors = 0;
  double error_rate = 0.0;
  double wilson_low = 0.0;
  double wilson_high = 0.0;
  double half_width = 0.0;  // (high - low) / 2
  double mean_bits = 0.0;
  double mean_payload_bits = 0.0;
  std::uint64_t m = 0;
  std::uint64_t sampling_failures = 0;
  std::vector<TrialRecord> records;
};

struct Wilson {
  double low = 0.0;
  double high = 0.0;
};

/// Wilson score interval with z = 1.96.
Wilson wilson_interval(std::uint64_t successes, std::uint64_t trials, double z = 1.96);

/// Runs `trials` independent executions on fresh (x, y) ~ mu; trial t draws
/// its input and shared seed from Rng::derive(master_seed, t).
ErrorEstimate estimate_uncertain_error(const UncertainInstance& instance, double theta,
                                       std::uint64_t trials, std::uint64_t master_seed,
                                       int jobs = 1, bool keep_records = false,
                                       double c1 = 4.0);

}  // namespace uccsim
