#include "bsubgrad/bsubgrad.h"

#include <cmath>
#include <limits>
#include <memory>
#include <new>
#include <sstream>
#include <stdexcept>
#include <string>

#include "bsubgrad/experiment.hpp"
#include "bsubgrad/problems.hpp"
#include "bsubgrad/prox.hpp"
#include "bsubgrad/solver.hpp"

struct bsg_problem {
  bsubgrad::Problem value;
};
struct bsg_prox {
  bsubgrad::ProxSetup value;
};
struct bsg_record {
  bsubgrad::RunRecord value;
};
struct bsg_config {
  bsubgrad::ExperimentConfig value;
};

namespace {

thread_local std::string g_error;
thread_local std::string g_error_field;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bsg_status fail(bsg_status code, const std::string& msg, const std::string& field = {}) {
  g_error = msg;
  g_error_field = field;
  return code;
}

template <class F>
bsg_status guarded(F&& body) {
  g_error.clear();
  g_error_field.clear();
  try {
    body();
    return BSG_OK;
  } catch (const bsubgrad::ConfigError& e) {
    return fail(BSG_INVALID_ARGUMENT, e.what(), e.field());
  } catch (const std::domain_error& e) {
    return fail(BSG_DOMAIN_ERROR, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(BSG_INVALID_ARGUMENT, e.what());
  } catch (const std::out_of_range& e) {
    return fail(BSG_INVALID_ARGUMENT, e.what());
  } catch (const std::runtime_error& e) {
    return fail(BSG_IO_ERROR, e.what());
  } catch (const std::bad_alloc&) {
    return fail(BSG_INTERNAL_ERROR, "out of memory");
  } catch (const std::exception& e) {
    return fail(BSG_INTERNAL_ERROR, e.what());
  } catch (...) {
    return fail(BSG_INTERNAL_ERROR, "unknown error");
  }
}

void require(bool cond, const char* what) {
  if (!cond) throw std::invalid_argument(what);
}

bsubgrad::Vector to_vector(const double* p, std::size_t n) {
  require(p != nullptr && n > 0, "null or empty vector");
  return bsubgrad::Vector(std::vector<double>(p, p + n));
}

void copy_out(const bsubgrad::Vector& v, double* out, std::size_t n) {
  require(out != nullptr, "null output buffer");
  require(n == v.dim(), "output buffer has the wrong length");
  for (std::size_t i = 0; i < n; ++i) out[i] = v[i];
}

double or_nan(const std::optional<double>& v) { return v ? *v : kNaN; }

template <class T>
void store(T** out, std::unique_ptr<T> obj) {
  require(out != nullptr, "null output handle");
  *out = obj.release();
}

void emit_lines(const std::string& text, bsg_line_callback cb, void* user) {
  if (!cb) return;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) cb(line.c_str(), user);
}

}  // namespace

extern "C" {

const char* bsg_version(void) { return bsubgrad::kVersion; }
const char* bsg_last_error(void) { return g_error.c_str(); }
const char* bsg_last_error_field(void) { return g_error_field.c_str(); }

bsg_status bsg_problem_example1(size_t n, double radius, double gamma, bsg_problem** out) {
  return guarded([&] {
    store(out, std::make_unique<bsg_problem>(
                   bsg_problem{bsubgrad::make_example1({n, radius, gamma})}));
  });
}

bsg_status bsg_problem_example2(size_t n, double radius, size_t m, const double* anchors,
                                uint64_t seed, bsg_problem** out) {
  return guarded([&] {
    bsubgrad::Example2Params p{n, radius, m, {}, seed};
    if (anchors) {
      require(n > 0 && m > 0, "anchor matrix must be non-empty");
      for (std::size_t i = 0; i < m; ++i) p.anchors.push_back(to_vector(anchors + i * n, n));
    }
    store(out, std::make_unique<bsg_problem>(bsg_problem{bsubgrad::make_example2(p)}));
  });
}

bsg_status bsg_problem_example2_file(double radius, const char* anchor_path, bsg_problem** out) {
  return guarded([&] {
    require(anchor_path != nullptr, "null anchor path");
    auto anchors = bsubgrad::load_anchors(anchor_path);
    bsubgrad::Example2Params p{anchors.front().dim(), radius, anchors.size(), anchors, 0};
    store(out, std::make_unique<bsg_problem>(bsg_problem{bsubgrad::make_example2(p)}));
  });
}

void bsg_problem_free(bsg_problem* pr) { delete pr; }

bsg_status bsg_problem_get_info(const bsg_problem* pr, bsg_problem_info* info) {
  return guarded([&] {
    require(pr && info, "null argument");
    const auto& p = pr->value;
    info->dim = p.dim;
    info->mu = p.mu;
    info->lipschitz_paper = or_nan(p.lipschitz_paper);
    info->lipschitz_analytic = or_nan(p.lipschitz_analytic);
    info->has_optimum = p.optimum ? 1 : 0;
    info->f_star = p.optimum ? p.optimum->f_star : kNaN;
  });
}

bsg_status bsg_problem_eval(const bsg_problem* pr, const double* x, size_t n, double* f) {
  return guarded([&] {
    require(pr && f, "null argument");
    require(n == pr->value.dim, "dimension mismatch");
    *f = pr->value.eval_f(to_vector(x, n));
  });
}

bsg_status bsg_problem_subgradient(const bsg_problem* pr, const double* x, size_t n, double* g) {
  return guarded([&] {
    require(pr != nullptr, "null problem");
    require(n == pr->value.dim, "dimension mismatch");
    copy_out(pr->value.subgrad(to_vector(x, n)), g, n);
  });
}

bsg_status bsg_problem_optimum(const bsg_problem* pr, double* x_star, size_t n) {
  return guarded([&] {
    require(pr != nullptr, "null problem");
    if (!pr->value.optimum) throw std::domain_error("problem has no reference optimum");
    copy_out(pr->value.optimum->x_star, x_star, n);
  });
}

bsg_status bsg_problem_validate_rsc(const bsg_problem* pr, const bsg_prox* ps, size_t samples,
                                    uint64_t seed, double* max_violation) {
  return guarded([&] {
    require(pr && ps && max_violation, "null argument");
    *max_violation =
        bsubgrad::validate_relative_strong_convexity(pr->value, ps->value, samples, seed);
  });
}

bsg_status bsg_prox_euclidean_ball(double radius, bsg_prox** out) {
  return guarded([&] {
    store(out, std::make_unique<bsg_prox>(bsg_prox{bsubgrad::ProxSetup::euclidean_ball(radius)}));
  });
}

bsg_status bsg_prox_entropy_simplex(size_t n, bsg_prox** out) {
  return guarded([&] {
    store(out, std::make_unique<bsg_prox>(bsg_prox{bsubgrad::ProxSetup::entropy_simplex(n)}));
  });
}

void bsg_prox_free(bsg_prox* ps) { delete ps; }

bsg_status bsg_prox_bregman(const bsg_prox* ps, const double* x, const double* y, size_t n,
                            double* out) {
  return guarded([&] {
    require(ps && out, "null argument");
    *out = bsubgrad::bregman(ps->value, to_vector(x, n), to_vector(y, n));
  });
}

bsg_status bsg_prox_mirror_step(const bsg_prox* ps, const double* x, const double* g, size_t n,
                                double gamma, double* out) {
  return guarded([&] {
    require(ps != nullptr, "null prox");
    copy_out(bsubgrad::mirror_step(ps->value, to_vector(x, n), to_vector(g, n), gamma), out, n);
  });
}

void bsg_run_options_init(bsg_run_options* opts) {
  if (!opts) return;
  opts->oracle = "exact";
  opts->step_rule = BSG_STEP_MATCHED;
  opts->iterations = 1000;
  opts->seed = 0;
  opts->log_every = 100;
  opts->adversarial = 0;
  opts->uniform_magnitude = 0;
}

bsg_status bsg_solve(const bsg_problem* pr, const bsg_prox* ps, const bsg_run_options* opts,
                     bsg_record** out) {
  return guarded([&] {
    require(pr && ps && opts, "null argument");
    require(opts->iterations >= 1, "iterations must be >= 1");
    require(opts->log_every >= 1, "log_every must be >= 1");
    bsubgrad::RunOptions o;
    o.model = bsubgrad::InexactnessModel::parse(opts->oracle ? opts->oracle : "exact");
    switch (opts->step_rule) {
      case BSG_STEP_MATCHED: break;
      case BSG_STEP_EXACT: o.rule_override = bsubgrad::StepRuleKind::ExactTheorem; break;
      case BSG_STEP_INEXACT: o.rule_override = bsubgrad::StepRuleKind::InexactTheorem; break;
      default: throw std::invalid_argument("unknown step rule");
    }
    o.iterations = opts->iterations;
    o.seed = opts->seed;
    o.log_every = opts->log_every;
    o.direction = opts->adversarial ? bsubgrad::NoiseDirection::Adversarial
                                    : bsubgrad::NoiseDirection::Random;
    o.magnitude = opts->uniform_magnitude ? bsubgrad::NoiseMagnitude::Uniform
                                          : bsubgrad::NoiseMagnitude::Worst;
    store(out, std::make_unique<bsg_record>(bsg_record{bsubgrad::run(pr->value, ps->value, o)}));
  });
}

void bsg_record_free(bsg_record* rec) { delete rec; }

uint64_t bsg_record_iterations(const bsg_record* rec) { return rec ? rec->value.iterations : 0; }

size_t bsg_record_checkpoint_count(const bsg_record* rec) {
  return rec ? rec->value.checkpoints.size() : 0;
}

bsg_status bsg_record_checkpoint(const bsg_record* rec, size_t index, bsg_checkpoint* out) {
  return guarded([&] {
    require(rec && out, "null argument");
    require(index < rec->value.checkpoints.size(), "checkpoint index out of range");
    const auto& cp = rec->value.checkpoints[index];
    out->k = cp.k;
    out->f_x = cp.f_x;
    out->f_avg = cp.f_avg;
    out->gap_avg = or_nan(cp.gap_avg);
    out->dist_avg = or_nan(cp.dist_avg);
    out->grad_dual_norm = cp.grad_dual_norm;
    out->noisy_grad_dual_norm = or_nan(cp.noisy_grad_dual_norm);
    out->sums[0] = cp.sums.s1;
    out->sums[1] = cp.sums.s2;
    out->sums[2] = cp.sums.s3;
    out->sums[3] = cp.sums.s4;
    out->sums[4] = cp.sums.s5;
  });
}

bsg_status bsg_record_average(const bsg_record* rec, double* x_hat, size_t n) {
  return guarded([&] {
    require(rec != nullptr, "null record");
    copy_out(rec->value.x_hat, x_hat, n);
  });
}

bsg_status bsg_record_bounds(const bsg_record* rec, const bsg_problem* pr, int lipschitz_mode,
                             bsg_bounds* out) {
  return guarded([&] {
    require(rec && pr && out, "null argument");
    require(lipschitz_mode == BSG_LIPSCHITZ_ANALYTIC || lipschitz_mode == BSG_LIPSCHITZ_PAPER,
            "unknown Lipschitz mode");
    auto mode = lipschitz_mode == BSG_LIPSCHITZ_PAPER ? bsubgrad::LipschitzMode::Paper
                                                      : bsubgrad::LipschitzMode::Analytic;
    const auto& r = rec->value;
    auto lip = mode == bsubgrad::LipschitzMode::Paper ? pr->value.lipschitz_paper
                                                      : pr->value.lipschitz_analytic;
    auto rep = bsubgrad::evaluate_bounds(r.sums, r.iterations, pr->value.mu, r.options.model,
                                         r.rule.kind, lip, mode);
    out->n_iter = rep.n_iter;
    out->func_new = or_nan(rep.func_new);
    out->func_classical = or_nan(rep.func_classical);
    out->dist_new = or_nan(rep.dist_new);
    out->dist_classical = or_nan(rep.dist_classical);
    out->func_relative = or_nan(rep.func_relative);
    out->func_absolute = or_nan(rep.func_absolute);
    out->dist_relative = or_nan(rep.dist_relative);
    out->dist_absolute = or_nan(rep.dist_absolute);
  });
}

bsg_status bsg_iterations_for_epsilon(double mu, double lipschitz, double eps, uint64_t* out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    *out = bsubgrad::iterations_for_epsilon(mu, lipschitz, eps);
  });
}

bsg_status bsg_config_new(bsg_config** out) {
  return guarded([&] { store(out, std::make_unique<bsg_config>()); });
}

void bsg_config_free(bsg_config* cfg) { delete cfg; }

bsg_status bsg_config_set(bsg_config* cfg, const char* key, const char* value) {
  return guarded([&] {
    require(cfg && key && value, "null argument");
    bsubgrad::apply_setting(cfg->value, key, value);
  });
}

bsg_status bsg_config_load_file(bsg_config* cfg, const char* path) {
  return guarded([&] {
    require(cfg && path, "null argument");
    bsubgrad::load_config_file(cfg->value, path);
  });
}

bsg_status bsg_cmd_run(const bsg_config* cfg, int* bounds_ok) {
  return guarded([&] {
    require(cfg != nullptr, "null config");
    auto res = bsubgrad::cmd_run(cfg->value);
    if (bounds_ok) *bounds_ok = res.bounds_ok ? 1 : 0;
  });
}

bsg_status bsg_cmd_sweep(const bsg_config* cfg, int* bounds_ok) {
  return guarded([&] {
    require(cfg != nullptr, "null config");
    auto res = bsubgrad::cmd_sweep(cfg->value);
    if (bounds_ok) *bounds_ok = res.bounds_ok ? 1 : 0;
  });
}

bsg_status bsg_cmd_certify(const char* summary_path, bsg_line_callback cb, void* user,
                           int* all_passed) {
  return guarded([&] {
    require(summary_path != nullptr, "null path");
    std::ostringstream report;
    bool ok = bsubgrad::cmd_certify(summary_path, report);
    emit_lines(report.str(), cb, user);
    if (all_passed) *all_passed = ok ? 1 : 0;
  });
}

bsg_status bsg_list_problems(bsg_line_callback cb, void* user) {
  return guarded([&] {
    for (const auto& d : bsubgrad::list_problems()) {
      std::string line = d.name + "  " + d.summary;
      if (cb) cb(line.c_str(), user);
    }
  });
}

}  // extern "C"
