// Acceptance checks: one PASS/FAIL line per criterion, details indented below.
#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "uccsim/agreement.hpp"
#include "uccsim/correlated_sampling.hpp"
#include "uccsim/distribution.hpp"
#include "uccsim/experiments.hpp"
#include "uccsim/families.hpp"
#include "uccsim/lowerbound.hpp"
#include "uccsim/oracle.hpp"
#include "uccsim/uncertain.hpp"

using namespace uccsim;

namespace {

constexpr std::uint64_t kSeed = 0x5eed2016;

// 1
constexpr std::uint64_t kAlgTrials = 10000;
constexpr double kAlgPointSeconds = 300.0;
// 2
constexpr std::uint64_t kShapeTrials = 2000;
constexpr double kFlatness = 0.10;
// 3
constexpr std::uint64_t kOneWayTrials = 1000;
constexpr double kOneWayAgreement = 0.9;
// 4
constexpr std::uint64_t kCsampleRuns = 100000;
constexpr double kCsampleEps = 0.1;
constexpr double kMarginalTv = 0.02;
constexpr std::uint64_t kMinHitsPerU = 100;
// 5
constexpr double kNormTol = 1e-8;
constexpr double kResidualTol = 1e-9;
constexpr double kSpectralSeconds = 10.0;
// 6
constexpr double kTensorTol = 1e-12;
// 7
constexpr double kGammaStability = 0.10;
// 8
constexpr double kDistanceTol = 1e-12;
// 10
constexpr int kChernoffSamples = 100000;
// 11
constexpr std::uint64_t kFamilySamples = 10000;

struct Criterion {
  int id;
  std::string title;
  std::function<bool(std::ostream&)> check;
};

std::map<int, bool> g_results;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v, int prec = 6) {
  std::ostringstream s;
  s.precision(prec);
  s << v;
  return s.str();
}

bool algorithm1_grid(std::ostream& log) {
  bool ok = true;
  std::uint64_t point = 0;
  for (const char* mu_name : {"product", "noisy:0.1"}) {
    const JointDistribution mu = std::string(mu_name) == "product"
                                     ? JointDistribution::uniform_product(8)
                                     : JointDistribution::noisy_hypercube(8, 0.1);
    for (int k : {0, 2, 4}) {
      for (double delta : {0.0, 0.05, 0.1}) {
        for (double theta : {0.2, 0.3}) {
          const auto t0 = std::chrono::steady_clock::now();
          Rng rng = Rng::derive(kSeed, point);
          const UncertainInstance inst = generate_instance(mu, 8, k, 0.0, delta, rng);
          const ErrorEstimate est =
              estimate_uncertain_error(inst, theta, kAlgTrials, mix64(kSeed, 1000 + point));
          const double bound = 0.0 + 2 * delta + theta;
          const double secs = seconds_since(t0);
          const bool pass = est.error_rate <= bound + est.half_width && secs < kAlgPointSeconds;
          ok = ok && pass;
          log << "    mu=" << mu_name << " k=" << k << " delta=" << delta << " theta=" << theta
              << " m=" << est.m << " error=" << fmt(est.error_rate) << " bound=" << bound
              << " +hw=" << fmt(est.half_width, 3) << " mean_bits=" << fmt(est.mean_bits)
              << " sampling_failures=" << est.sampling_failures << " time=" << fmt(secs, 3)
              << "s" << (pass ? "" : "  <-- FAIL") << '\n';
          ++point;
        }
      }
    }
  }
  return ok;
}

bool product_shape(std::ostream& log) {
  const int k = 2;
  const double theta = 0.3;
  std::vector<double> overhead;
  bool exact = true;
  for (int n : {4, 8, 12}) {
    Rng rng = Rng::derive(kSeed, 2000 + static_cast<std::uint64_t>(n));
    const UncertainInstance inst =
        generate_instance(JointDistribution::uniform_product(n), n, k, 0.0, 0.05, rng);
    const ErrorEstimate est = estimate_uncertain_error(inst, theta, kShapeTrials, mix64(kSeed, n));
    const double o = est.mean_bits - static_cast<double>(est.m);
    exact = exact && est.mean_bits == static_cast<double>(est.m) + est.mean_payload_bits;
    overhead.push_back(o);
    log << "    n=" << n << " m=" << est.m << " mean_bits=" << fmt(est.mean_bits)
        << " overhead=" << fmt(o) << " error=" << fmt(est.error_rate) << '\n';
  }
  const double hi = *std::max_element(overhead.begin(), overhead.end());
  const double lo = *std::min_element(overhead.begin(), overhead.end());
  // Relative spread, with 1 bit as the floor of the scale.
  const double spread = (hi - lo) / std::max(hi, 1.0);
  const double budget = 4.0 * std::log2(1 / sampling_error(theta)) / sampling_error(theta);
  log << "    overhead spread=" << fmt(spread) << " (limit " << kFlatness
      << "), sampling budget at I = 0: " << fmt(budget) << " bits\n";
  return exact && spread <= kFlatness && hi <= budget;
}

bool one_way_contract(std::ostream& log) {
  const JointDistribution mu = JointDistribution::noisy_hypercube(8, 0.1);
  const OneWaySampler sampler(mu, 20, 0.1);
  Rng rng(mix64(kSeed, 3));
  std::uint64_t agreed = 0, max_payload = 0, over = 0, truncated = 0;
  double total = 0.0;
  for (std::uint64_t t = 0; t < kOneWayTrials; ++t) {
    const auto [x, y] = mu.sample(rng);
    (void)y;
    const OneWaySampleResult r = sampler.run(x, SharedRandomness(rng.next()));
    agreed += r.agreed();
    max_payload = std::max(max_payload, r.payload_bits);
    over += r.payload_bits > sampler.budget_bits();
    truncated += r.truncated;
    total += static_cast<double>(r.payload_bits);
  }
  const double rate = static_cast<double>(agreed) / kOneWayTrials;
  log << "    budget l=" << sampler.budget_bits() << " agreement=" << rate
      << " max_payload=" << max_payload << " mean_payload=" << fmt(total / kOneWayTrials)
      << " truncated=" << truncated << " over_budget=" << over << '\n';
  return rate >= kOneWayAgreement && over == 0;
}

bool interactive_contract(std::ostream& log) {
  bool ok = true;
  const auto grid = csample_grid(16);
  for (std::size_t c = 0; c < grid.size(); ++c) {
    const CsampleCase& cs = grid[c];
    std::vector<double> seen(16, 0.0), hit(16, 0.0);
    double bits = 0.0;
    for (std::uint64_t i = 0; i < kCsampleRuns; ++i) {
      const auto r = correlated_sample(cs.p, cs.q, kCsampleEps, SharedRandomness(mix64(mix64(kSeed, 40 + c), i)));
      seen[r.alice] += 1;
      hit[r.alice] += r.alice == r.bob;
      bits += static_cast<double>(r.stats.bits_alice);
    }
    double tv = 0.0, worst = 1.0;
    int tested = 0;
    for (std::size_t u = 0; u < 16; ++u) {
      tv += std::abs(seen[u] / kCsampleRuns - cs.p[u]);
      if (seen[u] >= kMinHitsPerU) {
        ++tested;
        worst = std::min(worst, hit[u] / seen[u]);
      }
    }
    tv /= 2;
    const double d = kl_divergence(cs.p, cs.q);
    const double mean = bits / kCsampleRuns;
    const double shape = d + 2 * std::log2(1 / kCsampleEps) + std::sqrt(d) + 1;
    const double c_const = mean / shape;
    const bool pass = tv <= kMarginalTv && tested > 0 && worst >= 1 - kCsampleEps && std::isfinite(c_const);
    ok = ok && pass;
    log << "    " << cs.name << ": D=" << fmt(d) << " TV=" << fmt(tv, 3) << " tested_u=" << tested
        << " min_agreement=" << fmt(worst, 4) << " mean_bits=" << fmt(mean) << " C=" << fmt(c_const, 4)
        << (pass ? "" : "  <-- FAIL") << '\n';
  }
  return ok;
}

bool spectral_grid(std::ostream& log) {
  const auto t0 = std::chrono::steady_clock::now();
  double worst_norm = 0.0, worst_residual = 0.0, worst_gap = 1e9;
  for (int i = 1; i <= 950; ++i) {
    const double a = i * 1e-3;
    const auto [l1, l2] = lambda_closed_form(a);
    const RealMatrix n = build_N(a);
    worst_norm = std::max(worst_norm, std::abs(spectral_norm(n) - std::sqrt(l1)));
    worst_gap = std::min(worst_gap, spectral_bound_rhs(a) - std::sqrt(l1));
    const RealMatrix nn = n.transpose() * n;
    const double r = std::sqrt(2 * (a * a * a * a + 1)) / (1 - a * a);
    const double s = (a * a + 1) / (1 - a * a);
    const std::vector<std::vector<double>> vs = {{r, s, 1, 0}, {s, r, 0, 1}, {-r, s, 1, 0}, {s, -r, 0, 1}};
    for (std::size_t j = 0; j < 4; ++j) {
      const double lambda = j < 2 ? l1 : l2;
      const auto w = nn.apply(vs[j]);
      double res = 0.0;
      for (std::size_t e = 0; e < 4; ++e) res += (w[e] - lambda * vs[j][e]) * (w[e] - lambda * vs[j][e]);
      worst_residual = std::max(worst_residual, std::sqrt(res));
    }
  }
  const double secs = seconds_since(t0);
  log << "    max |norm - sqrt(l1)|=" << fmt(worst_norm, 3) << " min(rhs - sqrt(l1))=" << fmt(worst_gap)
      << " max residual=" << fmt(worst_residual, 3) << " time=" << fmt(secs, 3) << "s\n";
  return worst_norm <= kNormTol && worst_gap >= 0 && worst_residual <= kResidualTol &&
         secs < kSpectralSeconds;
}

bool tensor_identity(std::ostream& log) {
  double worst = 0.0;
  for (int n = 1; n <= 3; ++n) {
    for (double p : {0.1, 0.25, 0.4}) {
      const double scale = std::pow(1 - p, 2 * n) / std::pow(2.0, 2 * n);
      worst = std::max(worst, build_M(n, p).max_abs_diff(tensor_power(build_N(p / (1 - p)), n) * scale));
    }
  }
  log << "    max entry difference=" << fmt(worst, 3) << '\n';
  return worst <= kTensorTol;
}

bool discrepancy_chain(std::ostream& log) {
  bool ok = true;
  for (int i = 1; i <= 9; ++i) {
    const double p = 0.05 * i;
    const double disc = discrepancy_exact(1, p);
    const double bound = (1 - p) * (1 - p) * spectral_norm(build_N(p / (1 - p)));
    ok = ok && disc <= bound;
    log << "    p=" << fmt(p, 3) << " disc=" << fmt(disc) << " bound=" << fmt(bound) << '\n';
  }
  std::vector<double> gammas;
  for (int i = 1; i <= 10; ++i) gammas.push_back(gamma_estimate(100, i / 100.0));
  double mean = 0.0;
  for (double g : gammas) mean += g / static_cast<double>(gammas.size());
  bool stable = true;
  std::ostringstream list;
  for (double g : gammas) {
    stable = stable && g > 0 && std::abs(g - mean) <= kGammaStability * mean;
    list << ' ' << fmt(g, 5);
  }
  log << "    gamma(n=100, p=0.01..0.10):" << list.str() << " mean=" << fmt(mean, 5) << '\n';
  return ok && stable;
}

bool parity_family(std::ostream& log) {
  bool ok = true;
  int checked = 0;
  for (int n = 1; n <= 3; ++n) {
    for (double p : {0.1, 0.25}) {
      const JointDistribution mu = JointDistribution::noisy_hypercube(n, p);
      for (std::uint64_t s = 0; s < (1u << n); ++s) {
        ok = ok && exact_one_way_cc(BoolFunction::parity(n, s), mu, 0.0) == (s == 0 ? 0 : 1);
        for (std::uint64_t t = 0; t < (1u << n); ++t) {
          const BitString bs(n, s), bt(n, t);
          const double closed = parity_distance_exact(bs, bt, p);
          const double measured = distance_mu(BoolFunction::parity(n, s), BoolFunction::parity(n, t), mu);
          ok = ok && std::abs(closed - measured) <= kDistanceTol;
          const int d = (bs ^ bt).weight();
          for (int qn = 0; qn <= n; ++qn) {
            const double q = static_cast<double>(qn) / n;
            if (d <= q * n) ok = ok && closed <= p * q * n;
          }
          ++checked;
        }
      }
    }
  }
  log << "    pairs checked=" << checked << '\n';
  return ok;
}

bool agreement_components(std::ostream& log) {
  bool ok = true;
  for (int y = 1; y <= 24; ++y) {
    for (int i = 1; i <= 9; ++i) {
      const double d2 = 0.05 * i;
      const int radius = static_cast<int>(std::floor(d2 * y + 1e-9));
      ok = ok && static_cast<double>(hamming_ball_size(y, radius)) <= std::exp2(binary_entropy(d2) * y);
    }
  }
  const EntropyAudit a =
      agreement_entropy_audit(10, AgreementStrategy::nearest_codeword(example_code_10_4(), 2), 0.2);
  log << "    ball counts ok=" << ok << "; nearest-codeword H_inf=" << fmt(a.min_entropy, 10)
      << " required=" << fmt(a.required, 10) << " distinct=" << a.distinct_outputs << '\n';
  return ok && a.passed && a.min_entropy >= a.required;
}

bool chernoff_dominance(std::ostream& log) {
  struct Point {
    int n;
    double mean;
    ChernoffKind kind;
    double param;
  };
  const Point grid[] = {{100, 50, ChernoffKind::LowerTail, 0.2},
                        {100, 50, ChernoffKind::UpperTail, 0.2},
                        {100, 50, ChernoffKind::Additive, 10},
                        {60, 6, ChernoffKind::UpperTail, 1.0},
                        {200, 20, ChernoffKind::LowerTail, 0.5}};
  Rng rng(mix64(kSeed, 10));
  bool ok = true;
  for (const Point& p : grid) {
    const double freq = chernoff_tail_frequency(p.n, p.mean, p.kind, p.param, kChernoffSamples, rng);
    const double bound = chernoff_bound(p.n, p.mean, p.kind, p.param);
    ok = ok && freq <= bound;
    log << "    " << to_string(p.kind) << " n=" << p.n << " mean=" << p.mean << " param=" << p.param
        << " freq=" << fmt(freq) << " bound=" << fmt(bound) << '\n';
  }
  return ok;
}

bool reduction_components(std::ostream& log) {
  FamilyAuditConfig c;
  c.n = 60;
  c.p = 0.1;
  c.q = 0.2;
  c.samples = kFamilySamples;
  c.seed = mix64(kSeed, 11);
  std::ostringstream sink;
  const ExperimentOutcome out = family_audit(c, sink);
  log << "    " << out.summary << '\n';
  log << "    criteria 6, 7, 8: " << g_results[6] << g_results[7] << g_results[8] << '\n';
  return out.valid && g_results[6] && g_results[7] && g_results[8];
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

bool cli_determinism(std::ostream& log) {
  const std::vector<std::string> runs = {
      "uncertain-run --n 6 --k 2 --delta 0.05 --theta 0.3 --trials 300 --mu noisy:0.1 --seed 7",
      "csample-bench --universe 16 --trials 300 --seed 7",
      "lowerbound-sweep --n-grid 1,2,3 --p-grid 0.1,0.25 --eps 0.1 --seed 7",
      "agreement-audit --sizeY 10 --delta2 0.2 --strategy example",
      "oracle-cc --function parity:S=0b101 --mu noisy:0.2 --eps 0",
      "family-audit --n 60 --samples 2000 --seed 7"};
  bool ok = true;
  for (const std::string& args : runs) {
    std::string outputs[2];
    int codes[2];
    for (int rep = 0; rep < 2; ++rep) {
      const std::string file = "acceptance_det_" + std::to_string(rep);
      const std::string cmd = "\"" UCCSIM_CLI "\" " + args + " --out " + file + ".csv > " + file + ".txt";
      const int status = std::system(cmd.c_str());
      codes[rep] = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
      outputs[rep] = slurp(file + ".txt") + "\n--\n" + slurp(file + ".csv");
      std::remove((file + ".txt").c_str());
      std::remove((file + ".csv").c_str());
    }
    const bool same = codes[0] == 0 && codes[1] == 0 && outputs[0] == outputs[1] && outputs[0].size() > 10;
    ok = ok && same;
    log << "    " << (same ? "identical " : "DIFFERENT ") << outputs[0].size() << " bytes: uccsim "
        << args << '\n';
  }
  return ok;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {5, "spectral norm of N(a) vs closed form and polynomial bound", spectral_grid},
      {6, "M(n, p) equals the scaled tensor power of N(a)", tensor_identity},
      {7, "n = 1 discrepancy under the spectral bound; gamma estimate stable", discrepancy_chain},
      {8, "parity oracle costs, exact distances and the pqn bound", parity_family},
      {9, "Hamming balls vs entropy bound; nearest-codeword min-entropy audit", agreement_components},
      {10, "simulated binomial tails under the Chernoff expressions", chernoff_dominance},
      {11, "lower-bound reduction components (6-8 plus F_q membership audit)", reduction_components},
      {3, "one-way sampling on the noisy hypercube, m = 20, eps = 0.1", one_way_contract},
      {4, "interactive sampling marginal, agreement and constant C", interactive_contract},
      {2, "product mu: communication is m plus an n-independent overhead", product_shape},
      {12, "CLI runs repeat byte for byte", cli_determinism},
      {1, "Algorithm 1 error within eps + 2 delta + theta on the grid", algorithm1_grid},
  };
  for (const Criterion& c : criteria) {
    std::ostringstream log;
    bool pass = false;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      pass = c.check(log);
    } catch (const std::exception& e) {
      log << "    exception: " << e.what() << '\n';
    }
    g_results[c.id] = pass;
    std::cout << (pass ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.title << " ("
              << fmt(seconds_since(t0), 3) << " s)\n"
              << log.str() << std::flush;
  }
  int failed = 0;
  for (const auto& [id, pass] : g_results) failed += !pass;
  std::cout << (failed == 0 ? "all 12 criteria passed" : std::to_string(failed) + " criteria failed") << '\n';
  return failed == 0 ? 0 : 1;
}
