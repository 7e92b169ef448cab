#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "uccsim/bits.hpp"
#include "uccsim/distribution.hpp"
#include "uccsim/rng.hpp"

namespace uccsim {

/// Public coins shared by Alice and Bob.
///
/// The stream is counter-based: candidate i of a sub-stream is a pure function
/// of (seed, i), so both parties enumerate identical candidates without
/// exchanging or storing them.
class SharedRandomness {
 public:
  explicit SharedRandomness(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }

  /// Independent coins for sample `sample`, component `factor`.
  SharedRandomness instance(std::uint64_t sample, std::uint64_t factor) const {
    return SharedRandomness(mix64(mix64(seed_, sample), factor ^ 0x5bd1e995ULL));
  }

  /// Uniform [0,1) acceptance level alpha_i.
  double level(std::uint64_t i) const { return to_unit(mix64(seed_ ^ kLevelTag, i)); }
  /// Word used to draw the universe element u_i.
  std::uint64_t proposal_word(std::uint64_t i) const {
    return mix64(seed_ ^ kProposalTag, i);
  }
  /// Hash coins of index i for round `round`.
  std::uint64_t hash_word(std::uint64_t i, std::uint32_t round) const {
    return mix64(mix64(seed_ ^ kHashTag, i), round);
  }

 private:
  static constexpr std::uint64_t kLevelTag = 0x243f6a8885a308d3ULL;
  static constexpr std::uint64_t kProposalTag = 0x13198a2e03707344ULL;
  static constexpr std::uint64_t kHashTag = 0xa4093822299f31d0ULL;

  std::uint64_t seed_;
};

struct TranscriptStats {
  std::uint64_t bits_alice = 0;
  std::uint64_t bits_bob = 0;
  std::uint32_t rounds = 0;
  bool success = false;
};

struct CorrelatedSampleResult {
  std::uint64_t alice = 0;
  std::uint64_t bob = 0;
  TranscriptStats stats;
  /// Bob gave up (last scheduled round or candidate cap) without decoding.
  bool exhausted = false;
};

inline constexpr std::uint64_t kCandidateCap = 10'000'000;
inline constexpr std::uint32_t kMaxRounds = 30;

/// ceil(log2(1/eps)) + 2 hash bits appended by Alice in every round.
int hash_bits_per_round(double eps);

/// Bob's round-t candidate set holds his first 2^(2t+1) kept indices; the
/// index horizon I_t is the index of the last of them.
std::uint64_t kept_horizon(std::uint32_t round);

/// Last round Bob plays: the first t at which every element of supp(Q) is
/// kept outright (2^t Q / (K R) >= 1) and the candidate set is large enough
/// that i* lies beyond it with probability at most eps / 4.
std::uint32_t final_round(std::span<const double> bob_base, double envelope, double eps);

/// Interactive correlated sampling of P (Alice) against Q (Bob).
///
/// Candidates are u_i uniform over the universe with acceptance levels
/// alpha_i; Alice outputs u_{i*} for the first i with alpha_i < P(u_i), so her
/// output is exactly P-distributed. In round t Bob keeps the indices with
/// alpha_i < min(1, 2^t Q(u_i)) up to the horizon I_t, Alice appends fresh
/// hash bits of i*, and Bob stops at the first round where a kept index
/// matches every hash bit so far, answering with the lowest such index. Bob's
/// per-round reply is one continue/terminate bit.
CorrelatedSampleResult correlated_sample(std::span<const double> p,
                                         std::span<const double> q, double eps,
                                         const SharedRandomness& shared);

/// Same protocol with a public proposal law R and envelope K, P <= K R
/// pointwise. Alice accepts alpha_i < P(u_i) / (K R(u_i)) and Bob keeps
/// alpha_i < min(1, 2^t Q(u_i) / (K R(u_i))). Uniform R with K = |U| is the
/// plain variant above.
CorrelatedSampleResult correlated_sample(std::span<const double> p,
                                         std::span<const double> q,
                                         std::span<const double> proposal,
                                         double envelope, double eps,
                                         const SharedRandomness& shared);

struct OneWaySampleResult {
  std::vector<std::uint64_t> alice;
  std::vector<std::uint64_t> bob;
  TranscriptStats stats;
  std::uint64_t payload_bits = 0;
  std::uint64_t budget_bits = 0;
  std::uint64_t failed_instances = 0;
  bool truncated = false;

  bool agreed() const { return alice == bob; }
};

/// l = c1 * (m * I / eps + log2(1/eps) / eps), floored to whole bits.
std::uint64_t one_way_budget(double mutual_info, std::size_t m, double eps,
                             double c1);

/// One-way correlated sampling of m i.i.d. draws from mu_{Y|x}.
///
/// Each draw is split into the independent components reported by
/// JointDistribution::sampling_factors() and every component runs the
/// interactive protocol above with proposal law equal to its public marginal.
/// Components whose law does not depend on x are read straight off the
/// shared coins and cost nothing. Because Bob's stopping rule is a function of
/// public data and of the bits he has seen, Alice can simulate it and send
/// the concatenated transcripts as one message, cut at l bits. The per
/// component error budget is eps / (2 * number of communicating components).
class OneWaySampler {
 public:
  OneWaySampler(const JointDistribution& mu, std::size_t m, double eps,
                double c1 = 4.0);

  std::uint64_t budget_bits() const noexcept { return budget_bits_; }
  double component_error() const noexcept { return component_eps_; }
  int hash_bits() const noexcept { return hash_bits_; }
  std::size_t sample_count() const noexcept { return m_; }
  const std::vector<SamplingFactor>& factors() const noexcept { return factors_; }

  OneWaySampleResult run(std::uint64_t x, const SharedRandomness& shared) const;

 private:
  JointDistribution mu_;
  std::size_t m_;
  double eps_;
  std::vector<SamplingFactor> factors_;
  std::vector<std::vector<double>> factor_cdfs_;
  std::uint64_t budget_bits_ = 0;
  double component_eps_ = 1.0;
  int hash_bits_ = 0;
};

OneWaySampleResult one_way_correlated_sample(const JointDistribution& mu,
                                             const BitString& x, std::size_t m,
                                             double eps,
                                             const SharedRandomness& shared,
                                             double c1 = 4.0);

}  // namespace uccsim
