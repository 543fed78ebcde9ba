#include "bsubgrad/bounds.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bsubgrad {

namespace {

void require_iterations(std::uint64_t n_iter) {
  if (n_iter == 0) throw std::invalid_argument("bound: N must be >= 1");
}

void require_mu(double mu) {
  if (!(mu > 0.0)) throw std::invalid_argument("bound: mu must be positive");
}

void require_alpha(double alpha) {
  if (!(alpha >= 0.0 && alpha < 1.0))
    throw std::invalid_argument("bound: alpha must lie in [0,1)");
}

void require_delta(const Aggregates& agg, double delta) {
  if (!(delta >= 0.0)) throw std::invalid_argument("bound: delta must be >= 0");
  if (agg.delta != delta)
    throw std::invalid_argument("bound: S4 was accumulated for a different delta");
}

double nn1(std::uint64_t n_iter) {
  double n = static_cast<double>(n_iter);
  return n * (n + 1.0);
}

}  // namespace

std::string to_string(StepRuleKind kind) {
  return kind == StepRuleKind::ExactTheorem ? "exact" : "inexact";
}

std::string to_string(LipschitzMode mode) {
  return mode == LipschitzMode::Paper ? "paper" : "analytic";
}

StepRuleKind parse_step_rule(const std::string& text) {
  if (text == "exact") return StepRuleKind::ExactTheorem;
  if (text == "inexact") return StepRuleKind::InexactTheorem;
  throw std::invalid_argument("step-rule: expected exact or inexact, got '" + text + "'");
}

LipschitzMode parse_lipschitz_mode(const std::string& text) {
  if (text == "paper") return LipschitzMode::Paper;
  if (text == "analytic") return LipschitzMode::Analytic;
  throw std::invalid_argument("lipschitz-mode: expected paper or analytic, got '" + text + "'");
}

double bound_func_exact(const Aggregates& agg, std::uint64_t n_iter, double mu) {
  require_iterations(n_iter);
  require_mu(mu);
  return 2.0 / (mu * nn1(n_iter)) * agg.s1;
}

double bound_func_classical(std::uint64_t n_iter, double mu, double lipschitz) {
  require_iterations(n_iter);
  require_mu(mu);
  if (!(lipschitz > 0.0)) throw std::invalid_argument("bound: M_f must be positive");
  return 2.0 * lipschitz * lipschitz / (mu * (static_cast<double>(n_iter) + 1.0));
}

double bound_dist_exact(const Aggregates& agg, std::uint64_t n_iter, double mu) {
  require_iterations(n_iter);
  require_mu(mu);
  return 2.0 / (mu * std::sqrt(nn1(n_iter))) * std::sqrt(agg.s1);
}

double bound_dist_classical(std::uint64_t n_iter, double mu, double lipschitz) {
  require_iterations(n_iter);
  require_mu(mu);
  if (!(lipschitz > 0.0)) throw std::invalid_argument("bound: M_f must be positive");
  return 2.0 * lipschitz / (mu * std::sqrt(static_cast<double>(n_iter) + 1.0));
}

double bound_func_relative(const Aggregates& agg, std::uint64_t n_iter, double mu, double alpha) {
  require_iterations(n_iter);
  require_mu(mu);
  require_alpha(alpha);
  double denom = mu * nn1(n_iter);
  double a1 = 1.0 + alpha;
  return 4.0 * a1 * a1 / denom * agg.s2 + 2.0 * alpha * alpha / denom * agg.s3;
}

double bound_func_absolute(const Aggregates& agg, std::uint64_t n_iter, double mu, double delta) {
  require_iterations(n_iter);
  require_mu(mu);
  require_delta(agg, delta);
  return 4.0 / (mu * nn1(n_iter)) * agg.s4 + delta * delta / mu;
}

double bound_dist_relative(const Aggregates& agg, std::uint64_t n_iter, double mu, double alpha) {
  require_iterations(n_iter);
  require_mu(mu);
  require_alpha(alpha);
  double denom = mu * std::sqrt(nn1(n_iter));
  return 2.0 * std::numbers::sqrt2 * (1.0 + alpha) / denom * std::sqrt(agg.s2) +
         2.0 * alpha / denom * std::sqrt(agg.s3);
}

double bound_dist_absolute(const Aggregates& agg, std::uint64_t n_iter, double mu, double delta) {
  require_iterations(n_iter);
  require_mu(mu);
  require_delta(agg, delta);
  return 2.0 * std::numbers::sqrt2 / (mu * std::sqrt(nn1(n_iter))) * std::sqrt(agg.s4) +
         std::numbers::sqrt2 * delta / mu;
}

std::uint64_t iterations_for_epsilon(double mu, double lipschitz, double eps) {
  if (!(mu > 0.0) || !(lipschitz > 0.0) || !(eps > 0.0))
    throw std::invalid_argument("iterations_for_epsilon: arguments must be positive");
  double need = std::ceil(2.0 * lipschitz * lipschitz / (mu * eps) - 1.0);
  if (need < 1.0) return 1;
  if (need >= 1.8e19) throw std::overflow_error("iterations_for_epsilon: count overflows");
  return static_cast<std::uint64_t>(need);
}

std::optional<double> BoundReport::func_inexact() const {
  return func_relative ? func_relative : func_absolute;
}

std::optional<double> BoundReport::dist_inexact() const {
  return dist_relative ? dist_relative : dist_absolute;
}

BoundReport evaluate_bounds(const Aggregates& agg, std::uint64_t n_iter, double mu,
                            const InexactnessModel& model, StepRuleKind rule,
                            std::optional<double> lipschitz, LipschitzMode mode) {
  BoundReport r;
  r.n_iter = n_iter;
  r.lipschitz_mode = mode;
  using Kind = InexactnessModel::Kind;
  if (rule == StepRuleKind::ExactTheorem) {
    if (model.kind() != Kind::Exact) return r;
    r.func_new = bound_func_exact(agg, n_iter, mu);
    r.dist_new = bound_dist_exact(agg, n_iter, mu);
    if (lipschitz) {
      r.func_classical = bound_func_classical(n_iter, mu, *lipschitz);
      r.dist_classical = bound_dist_classical(n_iter, mu, *lipschitz);
    }
    return r;
  }
  if (model.kind() == Kind::Absolute) {
    r.func_absolute = bound_func_absolute(agg, n_iter, mu, model.delta());
    r.dist_absolute = bound_dist_absolute(agg, n_iter, mu, model.delta());
  } else {
    r.func_relative = bound_func_relative(agg, n_iter, mu, model.alpha());
    r.dist_relative = bound_dist_relative(agg, n_iter, mu, model.alpha());
  }
  return r;
}

bool within_bound(double observed, double bound, double scale) {
  return observed <= bound + 1e-9 * (1.0 + std::abs(scale));
}

}  // namespace bsubgrad
