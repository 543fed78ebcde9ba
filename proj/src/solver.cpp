#include "bsubgrad/solver.hpp"

#include <cmath>
#include <stdexcept>

namespace bsubgrad {

double step_size(const StepRule& rule, std::uint64_t k) {
  if (k < 1) throw std::invalid_argument("step_size: k must be >= 1");
  if (!(rule.mu > 0.0)) throw std::invalid_argument("step_size: mu must be positive");
  double numer = rule.kind == StepRuleKind::ExactTheorem ? 2.0 : 4.0;
  return numer / (rule.mu * (static_cast<double>(k) + 1.0));
}

StepRuleKind matched_rule(const InexactnessModel& model) {
  return model.kind() == InexactnessModel::Kind::Exact ? StepRuleKind::ExactTheorem
                                                       : StepRuleKind::InexactTheorem;
}

Vector update_average(const Vector& prev, const Vector& x_new, std::uint64_t n_iter) {
  if (n_iter == 0) throw std::invalid_argument("update_average: N must be >= 1");
  if (n_iter == 1) return x_new;
  require_same_dim(prev, x_new, "update_average");
  double n = static_cast<double>(n_iter);
  // prev + 2/(N+1) (x_new - prev): algebraically the same weights, and exact
  // when x_new == prev.
  double take = 2.0 / (n + 1.0);
  std::vector<double> out(prev.dim());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = prev[i] + take * (x_new[i] - prev[i]);
  return Vector(std::move(out));
}

void CompensatedSum::add(double v) {
  double t = sum_ + v;
  if (std::abs(sum_) >= std::abs(v))
    comp_ += (sum_ - t) + v;
  else
    comp_ += (v - t) + sum_;
  sum_ = t;
}

namespace {

struct SumSet {
  CompensatedSum s1, s2, s3, s4, s5;
  double delta = 0.0;

  void add(std::uint64_t k, double g_exact, double g_noisy) {
    double kd = static_cast<double>(k);
    double w = kd / (kd + 1.0);
    double e2 = g_exact * g_exact;
    double shifted = delta + g_exact;
    s1.add(w * e2);
    s2.add(e2);
    s3.add(kd * e2);
    s4.add(shifted * shifted);
    s5.add(w * g_noisy * g_noisy);
  }

  Aggregates snapshot() const {
    return Aggregates{s1.value(), s2.value(), s3.value(), s4.value(), s5.value(), delta};
  }
};

}  // namespace

RunRecord run(const Problem& pr, const ProxSetup& ps, const RunOptions& options) {
  if (options.iterations < 1) throw std::invalid_argument("run: iterations must be >= 1");
  if (options.log_every < 1) throw std::invalid_argument("run: log_every must be >= 1");
  if (!(pr.set == ps.set()))
    throw std::invalid_argument("run: problem set " + pr.set.describe() +
                                " does not match prox set " + ps.set().describe());
  if (!(pr.mu > 0.0)) throw std::invalid_argument("run: problem mu must be positive");
  if (options.direction == NoiseDirection::Adversarial && !pr.optimum)
    throw std::invalid_argument("run: adversarial noise needs a known optimum");

  RunRecord rec;
  rec.options = options;
  StepRuleKind matched = matched_rule(options.model);
  rec.rule = StepRule{options.rule_override.value_or(matched), pr.mu};
  rec.rule_overridden = options.rule_override.has_value() && *options.rule_override != matched;

  const NormPair norms = ps.norms();
  SubgradientOracle oracle(pr, norms, options.model, options.seed, options.direction,
                           options.magnitude);
  const bool exact = options.model.kind() == InexactnessModel::Kind::Exact;

  SumSet sums;
  sums.delta = options.model.delta();

  Vector x = initial_point(ps.set(), pr.dim);
  Vector x_hat;
  const std::uint64_t n_total = options.iterations;
  rec.checkpoints.reserve(static_cast<std::size_t>(n_total / options.log_every + 1));

  for (std::uint64_t k = 1; k <= n_total; ++k) {
    NoisySubgradient ng = oracle(x);
    double g_norm = norms.dual(ng.g_exact);
    double g_tilde_norm = exact ? g_norm : norms.dual(ng.g_tilde);
    sums.add(k, g_norm, g_tilde_norm);
    x_hat = update_average(x_hat, x, k);

    if (k % options.log_every == 0 || k == n_total) {
      Checkpoint cp;
      cp.k = k;
      cp.f_x = pr.eval_f(x);
      cp.f_avg = pr.eval_f(x_hat);
      if (pr.optimum) {
        cp.gap_avg = cp.f_avg - pr.optimum->f_star;
        cp.dist_avg = norms.primal(x_hat - pr.optimum->x_star);
      }
      cp.grad_dual_norm = g_norm;
      if (!exact) cp.noisy_grad_dual_norm = g_tilde_norm;
      cp.sums = sums.snapshot();
      rec.checkpoints.push_back(cp);
      if (options.store_iterates) rec.iterates.emplace_back(k, x);
    }

    x = mirror_step(ps, x, ng.g_tilde, step_size(rec.rule, k));
  }

  rec.iterations = n_total;
  rec.x_hat = std::move(x_hat);
  rec.x_last = std::move(x);
  rec.sums = sums.snapshot();
  return rec;
}

}  // namespace bsubgrad
