#include "uccsim/uncertain.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <numeric>

#include "uccsim/error.hpp"
#include "uccsim/parallel.hpp"

namespace uccsim {

namespace {

constexpr int kMaxMessageBits = 5;  // decider masks are 32-bit words
constexpr int kMaxMisfits = 64;
constexpr double kCertifyTolerance = 1e-12;

void check_theta(double theta) {
  require(theta > 0.0 && theta < 1.0, ErrorCode::InvalidArgument,
          "theta must lie in (0, 1)");
}

bool satisfies_m(int k, double theta, std::uint64_t m) {
  return std::ldexp(std::exp(-theta * theta * static_cast<double>(m) / 75.0), k) <=
         2.0 * theta / 5.0;
}

}  // namespace

std::uint64_t choose_m(int k, double theta) {
  check_theta(theta);
  require(k >= 0 && k <= 62, ErrorCode::InvalidArgument, "k must lie in [0, 62]");
  const double bound = 75.0 / (theta * theta) *
                       (k * std::numbers::ln2 + std::log(5.0 / (2.0 * theta)));
  auto m = static_cast<std::uint64_t>(std::max(0.0, std::ceil(bound)));
  while (!satisfies_m(k, theta, m)) ++m;
  while (m > 0 && satisfies_m(k, theta, m - 1)) --m;
  return m;
}

double sampling_error(double theta) {
  check_theta(theta);
  return (theta / 10.0) * (theta / 10.0);
}

void UncertainInstance::certify() const {
  const double dist = distance_mu(f, g, mu);
  if (dist > delta + kCertifyTolerance) {
    fail(ErrorCode::Validation, "instance violates distance_mu(f, g) <= delta");
  }
  const double err = protocol_error(*g_protocol, g, mu);
  if (err > eps + kCertifyTolerance) {
    fail(ErrorCode::Validation, "instance violates protocol_error(g) <= eps");
  }
  require(g_protocol->within_budget(k), ErrorCode::Validation,
          "protocol uses more than k bits");
}

UncertainInstance generate_instance(const JointDistribution& mu, int n, int k,
                                    double eps, double delta, Rng& rng) {
  require(mu.domain() == Domain::hypercube(n), ErrorCode::DomainMismatch,
          "mu must live on {0,1}^n x {0,1}^n");
  BoolFunction::check_table_size(mu.domain());
  require(k >= 0 && k <= std::min(n, kMaxMessageBits), ErrorCode::InvalidArgument,
          "k must lie in [0, min(n, 5)]");
  require(eps >= 0.0 && eps < 1.0, ErrorCode::InvalidArgument, "eps must lie in [0, 1)");
  require(delta >= 0.0 && delta < 1.0, ErrorCode::InvalidArgument,
          "delta must lie in [0, 1)");

  const Domain d = mu.domain();
  const auto messages = static_cast<std::uint32_t>(1U << k);
  std::vector<std::uint32_t> partition(d.x_size());
  for (auto& m : partition) m = static_cast<std::uint32_t>(rng.below(messages));
  std::vector<std::uint8_t> deciders(static_cast<std::size_t>(messages) * d.y_size());
  for (auto& b : deciders) b = static_cast<std::uint8_t>(rng.bits(1));
  auto protocol = std::make_shared<const OneWayProtocol>(d, messages, std::move(partition),
                                                         std::move(deciders));

  std::vector<std::uint8_t> g(d.size());
  for (std::uint64_t x = 0; x < d.x_size(); ++x) {
    for (std::uint64_t y = 0; y < d.y_size(); ++y) {
      g[d.index(x, y)] = protocol->evaluate(x, y);
    }
  }
  if (eps > 0.0) {
    std::vector<std::uint64_t> order(d.size());
    std::iota(order.begin(), order.end(), 0);
    auto mass_at = [&](std::uint64_t idx) { return mu.mass(idx >> d.y_bits, idx & (d.y_size() - 1)); };
    std::stable_sort(order.begin(), order.end(),
                     [&](std::uint64_t a, std::uint64_t b) { return mass_at(a) < mass_at(b); });
    double used = 0.0;
    for (std::uint64_t idx : order) {
      const double w = mass_at(idx);
      if (used + w > eps) break;
      used += w;
      g[idx] ^= 1;
    }
  }

  std::vector<std::uint8_t> f = g;
  if (delta > 0.0) {
    std::vector<std::uint8_t> flipped(d.size(), 0);
    double used = 0.0;
    int misfits = 0;
    while (misfits < kMaxMisfits) {
      const auto [x, y] = mu.sample(rng);
      const std::uint64_t idx = d.index(x, y);
      const double w = mu.mass(x, y);
      if (flipped[idx] != 0 || used + w > delta) {
        ++misfits;
        continue;
      }
      misfits = 0;
      flipped[idx] = 1;
      used += w;
      f[idx] ^= 1;
    }
  }

  UncertainInstance inst{mu,
                         protocol,
                         BoolFunction::table(d, std::move(g)),
                         BoolFunction::table(d, std::move(f)),
                         delta,
                         eps,
                         k};
  inst.certify();
  return inst;
}

Algorithm1::Algorithm1(const UncertainInstance& instance, double theta, double c1)
    : instance_(&instance),
      m_(choose_m(instance.k, theta)),
      sampler_(instance.mu, m_, sampling_error(theta), c1) {
  const OneWayProtocol& p = *instance.g_protocol;
  require(p.message_count() <= 32, ErrorCode::TooLarge, "at most 32 messages supported");
  const Domain& d = p.domain();
  decider_masks_.assign(d.y_size(), 0);
  for (std::uint32_t i = 0; i < p.message_count(); ++i) {
    for (std::uint64_t y = 0; y < d.y_size(); ++y) {
      if (p.decide(i, y)) decider_masks_[y] |= 1U << i;
    }
  }
}

RunResult Algorithm1::run(std::uint64_t x, std::uint64_t y,
                          const SharedRandomness& shared) const {
  const UncertainInstance& inst = *instance_;
  const OneWayProtocol& p = *inst.g_protocol;
  const OneWaySampleResult s = sampler_.run(x, shared);

  const std::uint32_t count = p.message_count();
  const std::uint32_t full = count >= 32 ? ~0U : (1U << count) - 1;
  std::vector<std::uint64_t> mismatches(count, 0);
  for (std::uint64_t j = 0; j < m_; ++j) {
    const bool fx = inst.f(x, s.alice[j]);  // Alice's message bit j
    std::uint32_t v = decider_masks_[s.bob[j]] ^ (fx ? full : 0U);
    while (v != 0) {
      ++mismatches[static_cast<std::size_t>(std::countr_zero(v))];
      v &= v - 1;
    }
  }

  RunResult r;
  r.m = m_;
  r.payload_bits = s.payload_bits;
  r.bits = s.payload_bits + m_;
  r.sampling_ok = s.agreed();
  r.truncated = s.truncated;
  r.err.resize(count);
  for (std::uint32_t i = 0; i < count; ++i) {
    r.err[i] = m_ == 0 ? 0.0 : static_cast<double>(mismatches[i]) / static_cast<double>(m_);
  }
  r.i_min = static_cast<std::uint32_t>(
      std::min_element(mismatches.begin(), mismatches.end()) - mismatches.begin());
  r.output = p.decide(r.i_min, y);
  r.truth = inst.g(x, y);
  return r;
}

RunResult run_algorithm1(const UncertainInstance& instance, const BitString& x,
                         const BitString& y, double theta,
                         const SharedRandomness& shared) {
  const Domain& d = instance.mu.domain();
  require(x.size() == d.x_bits && y.size() == d.y_bits, ErrorCode::DomainMismatch,
          "input lengths do not match the instance");
  require(instance.mu.mass(x.value(), y.value()) > 0.0, ErrorCode::InvalidArgument,
          "(x, y) outside the support of mu");
  return Algorithm1(instance, theta).run(x.value(), y.value(), shared);
}

Wilson wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
  require(trials > 0, ErrorCode::InvalidArgument, "no trials");
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = z / denom * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

ErrorEstimate estimate_uncertain_error(const UncertainInstance& instance, double theta,
                                       std::uint64_t trials, std::uint64_t master_seed,
                                       int jobs, bool keep_records, double c1) {
  require(trials > 0, ErrorCode::InvalidArgument, "no trials");
  const Algorithm1 algorithm(instance, theta, c1);

  struct Outcome {
    TrialRecord record;
    std::uint64_t payload = 0;
  };
  std::vector<Outcome> outcomes(trials);
  parallel_for(trials, jobs, [&](std::size_t t) {
    Rng rng = Rng::derive(master_seed, t);
    const auto [x, y] = instance.mu.sample(rng);
    const SharedRandomness shared(rng.next());
    const RunResult r = algorithm.run(x, y, shared);
    outcomes[t] = {{t, x, y, r.output, r.truth, r.bits, r.sampling_ok}, r.payload_bits};
  });

  ErrorEstimate est;
  est.trials = trials;
  est.m = algorithm.m();
  double bits = 0.0;
  double payload = 0.0;
  for (const Outcome& o : outcomes) {
    est.errors += o.record.output != o.record.truth;
    est.sampling_failures += !o.record.sampling_ok;
    bits += static_cast<double>(o.record.bits);
    payload += static_cast<double>(o.payload);
  }
  const double n = static_cast<double>(trials);
  est.error_rate = static_cast<double>(est.errors) / n;
  est.mean_bits = bits / n;
  est.mean_payload_bits = payload / n;
  const Wilson w = wilson_interval(est.errors, trials);
  est.wilson_low = w.low;
  est.wilson_high = w.high;
  est.half_width = (w.high - w.low) / 2.0;
  if (keep_records) {
    est.records.reserve(trials);
    for (const Outcome& o : outcomes) est.records.push_back(o.record);
  }
  return est;
}

}  // namespace uccsim
