#pragma once

#include <cstdint>
#include <vector>

#include "uccsim/distribution.hpp"
#include "uccsim/function.hpp"

namespace uccsim {

inline constexpr std::uint64_t kOracleMaxX = 8;
inline constexpr std::uint64_t kOracleMaxY = 16;

/// Errors at or below eps + kOracleTolerance count as eps-computing.
inline constexpr double kOracleTolerance = 1e-12;

/// Protocol for the partition `blocks` (values in [0, L)) whose deciders are
/// the mu-weighted majority of f over each block, per y. Ties output 0.
OneWayProtocol majority_protocol(const BoolFunction& f, const JointDistribution& mu,
                                 const std::vector<std::uint32_t>& blocks);

/// min over partitions of X into at most L parts of the majority-decider
/// error; index L of the result for L = 1..|X| (index 0 unused).
std::vector<double> best_error_by_message_count(const BoolFunction& f,
                                                const JointDistribution& mu);

/// Exact owCC^mu_eps(f): the least ceil(log2 L) over deterministic one-way
/// protocols with error <= eps.
int exact_one_way_cc(const BoolFunction& f, const JointDistribution& mu, double eps);

/// f, g in owF_{k, eps, delta}(mu): both have owCC_eps <= k and
/// distance_mu(f, g) <= delta.
bool certify_membership_owF(const BoolFunction& f, const BoolFunction& g,
                            const JointDistribution& mu, int k, double eps,
                            double delta);

}  // namespace uccsim
