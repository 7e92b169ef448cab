// Command-line experiment runner over the uccsim C API.
//
// Exit status: 0 success, 2 when a checked guarantee fails, 1 on usage or
// argument errors.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "uccsim/uccsim.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;

std::uint64_t default_seed() {
  const char* env = std::getenv("UCCSIM_SEED");
  if (env == nullptr || *env == '\0') return 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (end == env || *end != '\0') {
    std::fprintf(stderr, "warning: ignoring malformed UCCSIM_SEED '%s'\n", env);
    return 0;
  }
  return v;
}

int finish(uccsim_status status, const char* summary) {
  if (summary[0] != '\0') std::printf("%s\n", summary);
  if (status == UCCSIM_OK) return kExitOk;
  std::fprintf(stderr, "error: %s\n", uccsim_last_error());
  return status == UCCSIM_ERR_VALIDATION ? kExitValidation : kExitUsage;
}

const char* path_or_null(const std::string& s) { return s.empty() ? nullptr : s.c_str(); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"uccsim: protocols under contextual uncertainty"};
  app.require_subcommand(1);
  const std::uint64_t seed0 = default_seed();

  char summary[1024] = {0};
  int exit_code = kExitOk;

  // uncertain-run
  uccsim_uncertain_params up;
  uccsim_uncertain_params_default(&up);
  up.seed = seed0;
  std::string up_mu = "product";
  std::string up_out;
  auto* run = app.add_subcommand("uncertain-run", "Algorithm 1 on a generated instance");
  run->add_option("--n", up.n, "input bits per side")->capture_default_str();
  run->add_option("--k", up.k, "bit budget of g's protocol")->capture_default_str();
  run->add_option("--eps", up.eps, "protocol error of g")->capture_default_str();
  run->add_option("--delta", up.delta, "distance budget between f and g")->capture_default_str();
  run->add_option("--theta", up.theta, "slack")->capture_default_str();
  run->add_option("--trials", up.trials, "number of runs")->capture_default_str();
  run->add_option("--seed", up.seed, "master seed (default $UCCSIM_SEED or 0)");
  run->add_option("--mu", up_mu, "product | noisy:p | file:path.json")->capture_default_str();
  run->add_option("--jobs", up.jobs, "worker threads")->capture_default_str();
  run->add_option("--c1", up.c1, "constant of the sampling budget")->capture_default_str();
  run->add_option("--out", up_out, "CSV output path");

  // csample-bench
  uccsim_csample_params cp;
  uccsim_csample_params_default(&cp);
  cp.seed = seed0;
  std::string cp_out;
  auto* bench = app.add_subcommand("csample-bench", "interactive correlated sampling grid");
  bench->add_option("--universe", cp.universe, "universe size, multiple of 16")->capture_default_str();
  bench->add_option("--eps", cp.eps, "error budget")->capture_default_str();
  bench->add_option("--trials", cp.trials, "runs per (P, Q) pair")->capture_default_str();
  bench->add_option("--seed", cp.seed, "master seed (default $UCCSIM_SEED or 0)");
  bench->add_option("--jobs", cp.jobs, "worker threads")->capture_default_str();
  bench->add_option("--out", cp_out, "CSV output path");

  // lowerbound-sweep
  std::vector<double> p_grid{0.05, 0.1, 0.25};
  std::vector<int> n_grid{1, 2};
  double lb_eps = 0.1;
  std::uint64_t lb_seed = seed0;
  int lb_restarts = 64;
  int lb_jobs = 1;
  std::string lb_out;
  auto* sweep = app.add_subcommand("lowerbound-sweep", "spectral discrepancy bounds");
  sweep->add_option("--p-grid", p_grid, "comma-separated p values")->delimiter(',');
  sweep->add_option("--n-grid", n_grid, "comma-separated n values")->delimiter(',');
  sweep->add_option("--eps", lb_eps, "protocol error")->capture_default_str();
  sweep->add_option("--seed", lb_seed, "seed of the rectangle search");
  sweep->add_option("--restarts", lb_restarts, "rectangle search restarts")->capture_default_str();
  sweep->add_option("--jobs", lb_jobs, "worker threads")->capture_default_str();
  sweep->add_option("--out", lb_out, "CSV output path");

  // agreement-audit
  int size_y = 10;
  double delta2 = 0.2;
  std::string strategy = "example";
  std::string ag_out;
  auto* audit = app.add_subcommand("agreement-audit", "min-entropy audit of a strategy");
  audit->add_option("--sizeY", size_y, "|Y|, at most 20")->capture_default_str();
  audit->add_option("--delta2", delta2, "distance budget")->capture_default_str();
  audit->add_option("--strategy", strategy, "identity | example | file.json")->capture_default_str();
  audit->add_option("--out", ag_out, "CSV output path");

  // oracle-cc
  std::string function;
  std::string oracle_mu = "product";
  double oracle_eps = 0.0;
  int oracle_n = -1;
  std::string oracle_out;
  auto* oracle = app.add_subcommand("oracle-cc", "exact one-way communication complexity");
  oracle->add_option("--function", function, "parity:S=0b101 | constant:0|1 | equality | file:path.json")
      ->required();
  oracle->add_option("--mu", oracle_mu, "product | noisy:p | file:path.json")->capture_default_str();
  oracle->add_option("--eps", oracle_eps, "allowed error")->capture_default_str();
  oracle->add_option("--n", oracle_n, "input bits per side (parity infers it)");
  oracle->add_option("--out", oracle_out, "CSV output path");

  // family-audit
  uccsim_family_params fp;
  uccsim_family_params_default(&fp);
  fp.seed = seed0;
  std::string fa_out;
  auto* family = app.add_subcommand("family-audit", "F_q membership and parity checks");
  family->add_option("--n", fp.n, "input bits")->capture_default_str();
  family->add_option("--p", fp.p, "noise of mu_p")->capture_default_str();
  family->add_option("--q", fp.q, "closeness parameter")->capture_default_str();
  family->add_option("--samples", fp.samples, "pairs drawn from D_q")->capture_default_str();
  family->add_option("--seed", fp.seed, "master seed (default $UCCSIM_SEED or 0)");
  family->add_option("--out", fa_out, "CSV output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (run->parsed()) {
    up.mu = up_mu.c_str();
    exit_code = finish(
        uccsim_run_uncertain(&up, path_or_null(up_out), summary, sizeof summary), summary);
  } else if (bench->parsed()) {
    exit_code = finish(
        uccsim_run_csample_bench(&cp, path_or_null(cp_out), summary, sizeof summary),
        summary);
  } else if (sweep->parsed()) {
    const uccsim_lowerbound_params lp{p_grid.data(), p_grid.size(), n_grid.data(),
                                      n_grid.size(), lb_eps,        lb_seed,
                                      lb_restarts,   lb_jobs};
    exit_code = finish(
        uccsim_run_lowerbound_sweep(&lp, path_or_null(lb_out), summary, sizeof summary),
        summary);
  } else if (audit->parsed()) {
    exit_code = finish(uccsim_run_agreement_audit(size_y, delta2, strategy.c_str(),
                                                  path_or_null(ag_out), summary,
                                                  sizeof summary),
                       summary);
  } else if (oracle->parsed()) {
    exit_code = finish(uccsim_run_oracle_cc(function.c_str(), oracle_mu.c_str(), oracle_eps,
                                            oracle_n, path_or_null(oracle_out), summary,
                                            sizeof summary),
                       summary);
  } else if (family->parsed()) {
    exit_code = finish(
        uccsim_run_family_audit(&fp, path_or_null(fa_out), summary, sizeof summary),
        summary);
  }
  return exit_code;
}
