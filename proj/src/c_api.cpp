#include "uccsim/uccsim.h"

#include <cstring>
#include <fstream>
#include <ostream>
#include <memory>
#include <new>
#include <string>

#include "uccsim/agreement.hpp"
#include "uccsim/correlated_sampling.hpp"
#include "uccsim/distribution.hpp"
#include "uccsim/error.hpp"
#include "uccsim/experiments.hpp"
#include "uccsim/function.hpp"
#include "uccsim/lowerbound.hpp"
#include "uccsim/oracle.hpp"
#include "uccsim/serialize.hpp"
#include "uccsim/uncertain.hpp"

struct uccsim_distribution {
  uccsim::JointDistribution mu;
};

struct uccsim_function {
  uccsim::BoolFunction f;
};

struct uccsim_instance {
  uccsim::UncertainInstance inst;
};

namespace {

thread_local std::string g_last_error;

uccsim_status to_status(uccsim::ErrorCode code) {
  switch (code) {
    case uccsim::ErrorCode::InvalidArgument:
      return UCCSIM_ERR_INVALID_ARGUMENT;
    case uccsim::ErrorCode::DomainMismatch:
      return UCCSIM_ERR_DOMAIN_MISMATCH;
    case uccsim::ErrorCode::TooLarge:
      return UCCSIM_ERR_TOO_LARGE;
    case uccsim::ErrorCode::Undefined:
      return UCCSIM_ERR_UNDEFINED;
    case uccsim::ErrorCode::Validation:
      return UCCSIM_ERR_VALIDATION;
    case uccsim::ErrorCode::Io:
      return UCCSIM_ERR_IO;
  }
  return UCCSIM_ERR_INTERNAL;
}

template <class Fn>
uccsim_status guard(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return UCCSIM_OK;
  } catch (const uccsim::Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return UCCSIM_ERR_TOO_LARGE;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return UCCSIM_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return UCCSIM_ERR_INTERNAL;
  }
}

template <class T>
void need(const T* ptr) {
  uccsim::require(ptr != nullptr, uccsim::ErrorCode::InvalidArgument, "null argument");
}

void copy_summary(const std::string& text, char* summary, size_t capacity) {
  if (summary == nullptr || capacity == 0) return;
  const size_t n = std::min(text.size(), capacity - 1);
  std::memcpy(summary, text.data(), n);
  summary[n] = '\0';
}

/// Runs a driver against a file or stdout, then reports a failed guarantee as
/// a validation status.
template <class Driver>
uccsim_status run_driver(const char* out_path, char* summary, size_t capacity,
                         Driver&& driver) {
  copy_summary("", summary, capacity);
  uccsim::ExperimentOutcome outcome;
  const uccsim_status status = guard([&] {
    if (out_path == nullptr) {
      std::ostream discard(nullptr);
      outcome = driver(discard);
      return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) uccsim::fail(uccsim::ErrorCode::Io, std::string("cannot write ") + out_path);
    outcome = driver(out);
    out.close();
    if (!out) uccsim::fail(uccsim::ErrorCode::Io, std::string("write failed: ") + out_path);
  });
  if (status != UCCSIM_OK) return status;
  copy_summary(outcome.summary, summary, capacity);
  if (!outcome.valid) {
    g_last_error = outcome.summary;
    return UCCSIM_ERR_VALIDATION;
  }
  return UCCSIM_OK;
}

}  // namespace

extern "C" {

const char* uccsim_last_error(void) { return g_last_error.c_str(); }

const char* uccsim_version(void) { return "1.0.0"; }

uccsim_status uccsim_distribution_parse(const char* spec, int n, uccsim_distribution** out) {
  return guard([&] {
    need(spec);
    need(out);
    *out = new uccsim_distribution{uccsim::parse_mu_spec(spec, n)};
  });
}

uccsim_status uccsim_distribution_dense(int x_bits, int y_bits, const double* masses,
                                        uccsim_distribution** out) {
  return guard([&] {
    need(masses);
    need(out);
    uccsim::require(x_bits >= 0 && y_bits >= 0 &&
                        x_bits <= uccsim::kMaxTableBitsPerSide &&
                        y_bits <= uccsim::kMaxTableBitsPerSide,
                    uccsim::ErrorCode::TooLarge, "dense tables need <= 14 bits per side");
    const uccsim::Domain d{x_bits, y_bits};
    std::vector<double> m(masses, masses + d.size());
    *out = new uccsim_distribution{uccsim::JointDistribution::dense(d, std::move(m))};
  });
}

void uccsim_distribution_free(uccsim_distribution* mu) { delete mu; }

uccsim_status uccsim_distribution_mass(const uccsim_distribution* mu, uint64_t x,
                                       uint64_t y, double* out) {
  return guard([&] {
    need(mu);
    need(out);
    const uccsim::Domain& d = mu->mu.domain();
    uccsim::require(x < d.x_size() && y < d.y_size(), uccsim::ErrorCode::DomainMismatch,
                    "input outside the domain");
    *out = mu->mu.mass(x, y);
  });
}

uccsim_status uccsim_mutual_information(const uccsim_distribution* mu, double* bits) {
  return guard([&] {
    need(mu);
    need(bits);
    *bits = uccsim::mutual_information(mu->mu);
  });
}

uccsim_status uccsim_kl_divergence(const double* p, const double* q, size_t size,
                                   double* bits) {
  return guard([&] {
    need(p);
    need(q);
    need(bits);
    *bits = uccsim::kl_divergence({p, size}, {q, size});
  });
}

uccsim_status uccsim_function_parse(const char* spec, int n, uccsim_function** out) {
  return guard([&] {
    need(spec);
    need(out);
    *out = new uccsim_function{uccsim::parse_function_spec(spec, n)};
  });
}

void uccsim_function_free(uccsim_function* f) { delete f; }

uccsim_status uccsim_function_eval(const uccsim_function* f, uint64_t x, uint64_t y,
                                   int* out) {
  return guard([&] {
    need(f);
    need(out);
    const uccsim::Domain& d = f->f.domain();
    uccsim::require(x < d.x_size() && y < d.y_size(), uccsim::ErrorCode::DomainMismatch,
                    "input outside the domain");
    *out = f->f(x, y) ? 1 : 0;
  });
}

uccsim_status uccsim_distance_mu(const uccsim_function* f, const uccsim_function* g,
                                 const uccsim_distribution* mu, double* out) {
  return guard([&] {
    need(f);
    need(g);
    need(mu);
    need(out);
    *out = uccsim::distance_mu(f->f, g->f, mu->mu);
  });
}

uccsim_status uccsim_oracle_cc(const uccsim_function* f, const uccsim_distribution* mu,
                               double eps, int* bits) {
  return guard([&] {
    need(f);
    need(mu);
    need(bits);
    *bits = uccsim::exact_one_way_cc(f->f, mu->mu, eps);
  });
}

uccsim_status uccsim_correlated_sample(const double* p, const double* q, size_t size,
                                       double eps, uint64_t seed, uint64_t* alice,
                                       uint64_t* bob, uccsim_transcript* stats) {
  return guard([&] {
    need(p);
    need(q);
    need(alice);
    need(bob);
    const auto r = uccsim::correlated_sample({p, size}, {q, size}, eps,
                                             uccsim::SharedRandomness(seed));
    *alice = r.alice;
    *bob = r.bob;
    if (stats != nullptr) {
      *stats = {r.stats.bits_alice, r.stats.bits_bob, r.stats.rounds, r.stats.success};
    }
  });
}

uccsim_status uccsim_one_way_sample(const uccsim_distribution* mu, uint64_t x, size_t m,
                                    double eps, uint64_t seed, uint64_t* alice,
                                    uint64_t* bob, uint64_t* budget_bits,
                                    uccsim_transcript* stats) {
  return guard([&] {
    need(mu);
    if (m > 0) {
      need(alice);
      need(bob);
    }
    const uccsim::OneWaySampler sampler(mu->mu, m, eps);
    const auto r = sampler.run(x, uccsim::SharedRandomness(seed));
    std::copy(r.alice.begin(), r.alice.end(), alice);
    std::copy(r.bob.begin(), r.bob.end(), bob);
    if (budget_bits != nullptr) *budget_bits = r.budget_bits;
    if (stats != nullptr) {
      *stats = {r.stats.bits_alice, r.stats.bits_bob, r.stats.rounds, r.stats.success};
    }
  });
}

uccsim_status uccsim_instance_generate(const uccsim_distribution* mu, int n, int k,
                                       double eps, double delta, uint64_t seed,
                                       uccsim_instance** out) {
  return guard([&] {
    need(mu);
    need(out);
    uccsim::Rng rng(seed);
    *out = new uccsim_instance{uccsim::generate_instance(mu->mu, n, k, eps, delta, rng)};
  });
}

void uccsim_instance_free(uccsim_instance* inst) { delete inst; }

uccsim_status uccsim_instance_audit(const uccsim_instance* inst, double* distance,
                                    double* protocol_error) {
  return guard([&] {
    need(inst);
    const uccsim::UncertainInstance& i = inst->inst;
    if (distance != nullptr) *distance = uccsim::distance_mu(i.f, i.g, i.mu);
    if (protocol_error != nullptr) {
      *protocol_error = uccsim::protocol_error(*i.g_protocol, i.g, i.mu);
    }
  });
}

uccsim_status uccsim_instance_write_json(const uccsim_instance* inst, const char* path) {
  return guard([&] {
    need(inst);
    need(path);
    const uccsim::UncertainInstance& i = inst->inst;
    uccsim::Json doc;
    doc["n"] = i.mu.domain().x_bits;
    doc["kind"] = "uncertain_instance";
    doc["payload"] = {{"k", i.k},
                      {"eps", i.eps},
                      {"delta", i.delta},
                      {"mu", uccsim::to_json(i.mu)},
                      {"g_protocol", uccsim::to_json(*i.g_protocol)},
                      {"g", uccsim::to_json(i.g)},
                      {"f", uccsim::to_json(i.f)}};
    std::ofstream out(path);
    if (!out) uccsim::fail(uccsim::ErrorCode::Io, std::string("cannot write ") + path);
    out << doc.dump(2) << '\n';
  });
}

uccsim_status uccsim_choose_m(int k, double theta, uint64_t* m) {
  return guard([&] {
    need(m);
    *m = uccsim::choose_m(k, theta);
  });
}

uccsim_status uccsim_estimate_error(const uccsim_instance* inst, double theta,
                                    uint64_t trials, uint64_t seed, int jobs,
                                    uccsim_error_estimate* out) {
  return guard([&] {
    need(inst);
    need(out);
    const auto e = uccsim::estimate_uncertain_error(inst->inst, theta, trials, seed, jobs);
    *out = {e.trials,    e.errors,    e.error_rate,        e.wilson_low, e.wilson_high,
            e.half_width, e.mean_bits, e.mean_payload_bits, e.m,          e.sampling_failures};
  });
}

uccsim_status uccsim_spectral_norm_N(double a, double* out) {
  return guard([&] {
    need(out);
    *out = uccsim::spectral_norm(uccsim::build_N(a));
  });
}

uccsim_status uccsim_lambda_closed_form(double a, double* lambda1, double* lambda2) {
  return guard([&] {
    need(lambda1);
    need(lambda2);
    const auto [l1, l2] = uccsim::lambda_closed_form(a);
    *lambda1 = l1;
    *lambda2 = l2;
  });
}

uccsim_status uccsim_spectral_bound_rhs(double a, double* out) {
  return guard([&] {
    need(out);
    *out = uccsim::spectral_bound_rhs(a);
  });
}

uccsim_status uccsim_discrepancy_exact(int n, double p, double* out) {
  return guard([&] {
    need(out);
    *out = uccsim::discrepancy_exact(n, p);
  });
}

uccsim_status uccsim_disc_spectral_bound(int n, double p, double* out) {
  return guard([&] {
    need(out);
    *out = uccsim::disc_spectral_bound(n, p);
  });
}

uccsim_status uccsim_cc_lower_bound(double disc, double eps, double* bits) {
  return guard([&] {
    need(bits);
    *bits = uccsim::cc_lower_bound(disc, eps);
  });
}

uccsim_status uccsim_hamming_ball_size(int size_y, int radius, uint64_t* out) {
  return guard([&] {
    need(out);
    *out = uccsim::hamming_ball_size(size_y, radius);
  });
}

uccsim_status uccsim_chernoff_bound(int n, double mean, uccsim_chernoff_kind kind,
                                    double param, double* out) {
  return guard([&] {
    need(out);
    uccsim::ChernoffKind k = uccsim::ChernoffKind::LowerTail;
    switch (kind) {
      case UCCSIM_CHERNOFF_LOWER:
        break;
      case UCCSIM_CHERNOFF_UPPER:
        k = uccsim::ChernoffKind::UpperTail;
        break;
      case UCCSIM_CHERNOFF_ADDITIVE:
        k = uccsim::ChernoffKind::Additive;
        break;
      default:
        uccsim::fail(uccsim::ErrorCode::InvalidArgument, "unknown Chernoff kind");
    }
    *out = uccsim::chernoff_bound(n, mean, k, param);
  });
}

void uccsim_uncertain_params_default(uccsim_uncertain_params* params) {
  if (params == nullptr) return;
  const uccsim::UncertainRunConfig c;
  *params = {c.n, c.k, c.eps, c.delta, c.theta, c.trials, c.seed, "product", c.jobs, c.c1};
}

uccsim_status uccsim_run_uncertain(const uccsim_uncertain_params* params,
                                   const char* out_path, char* summary, size_t capacity) {
  if (params == nullptr || params->mu == nullptr) {
    g_last_error = "null argument";
    return UCCSIM_ERR_INVALID_ARGUMENT;
  }
  uccsim::UncertainRunConfig c;
  c.n = params->n;
  c.k = params->k;
  c.eps = params->eps;
  c.delta = params->delta;
  c.theta = params->theta;
  c.trials = params->trials;
  c.seed = params->seed;
  c.mu = params->mu;
  c.jobs = params->jobs;
  c.c1 = params->c1;
  return run_driver(out_path, summary, capacity,
                    [&](std::ostream& out) { return uccsim::uncertain_run(c, out); });
}

void uccsim_csample_params_default(uccsim_csample_params* params) {
  if (params == nullptr) return;
  const uccsim::CsampleBenchConfig c;
  *params = {c.universe, c.eps, c.trials, c.seed, c.jobs};
}

uccsim_status uccsim_run_csample_bench(const uccsim_csample_params* params,
                                       const char* out_path, char* summary,
                                       size_t capacity) {
  if (params == nullptr) {
    g_last_error = "null argument";
    return UCCSIM_ERR_INVALID_ARGUMENT;
  }
  uccsim::CsampleBenchConfig c;
  c.universe = params->universe;
  c.eps = params->eps;
  c.trials = params->trials;
  c.seed = params->seed;
  c.jobs = params->jobs;
  return run_driver(out_path, summary, capacity,
                    [&](std::ostream& out) { return uccsim::csample_bench(c, out); });
}

uccsim_status uccsim_run_lowerbound_sweep(const uccsim_lowerbound_params* params,
                                          const char* out_path, char* summary,
                                          size_t capacity) {
  if (params == nullptr || (params->p_count > 0 && params->p_grid == nullptr) ||
      (params->n_count > 0 && params->n_grid == nullptr)) {
    g_last_error = "null argument";
    return UCCSIM_ERR_INVALID_ARGUMENT;
  }
  uccsim::LowerboundSweepConfig c;
  c.p_grid.assign(params->p_grid, params->p_grid + params->p_count);
  c.n_grid.assign(params->n_grid, params->n_grid + params->n_count);
  c.eps = params->eps;
  c.seed = params->seed;
  c.restarts = params->restarts;
  c.jobs = params->jobs;
  return run_driver(out_path, summary, capacity,
                    [&](std::ostream& out) { return uccsim::lowerbound_sweep(c, out); });
}

uccsim_status uccsim_run_agreement_audit(int size_y, double delta2, const char* strategy,
                                         const char* out_path, char* summary,
                                         size_t capacity) {
  if (strategy == nullptr) {
    g_last_error = "null argument";
    return UCCSIM_ERR_INVALID_ARGUMENT;
  }
  const uccsim::AgreementAuditConfig c{size_y, delta2, strategy};
  return run_driver(out_path, summary, capacity,
                    [&](std::ostream& out) { return uccsim::agreement_audit(c, out); });
}

uccsim_status uccsim_run_oracle_cc(const char* function, const char* mu, double eps, int n,
                                   const char* out_path, char* summary, size_t capacity) {
  if (function == nullptr || mu == nullptr) {
    g_last_error = "null argument";
    return UCCSIM_ERR_INVALID_ARGUMENT;
  }
  const uccsim::OracleCcConfig c{function, mu, eps, n};
  return run_driver(out_path, summary, capacity,
                    [&](std::ostream& out) { return uccsim::oracle_cc(c, out); });
}

void uccsim_family_params_default(uccsim_family_params* params) {
  if (params == nullptr) return;
  const uccsim::FamilyAuditConfig c;
  *params = {c.n, c.p, c.q, c.samples, c.seed};
}

uccsim_status uccsim_run_family_audit(const uccsim_family_params* params,
                                      const char* out_path, char* summary,
                                      size_t capacity) {
  if (params == nullptr) {
    g_last_error = "null argument";
    return UCCSIM_ERR_INVALID_ARGUMENT;
  }
  const uccsim::FamilyAuditConfig c{params->n, params->p, params->q, params->samples,
                                    params->seed};
  return run_driver(out_path, summary, capacity,
                    [&](std::ostream& out) { return uccsim::family_audit(c, out); });
}

}  // extern "C"
