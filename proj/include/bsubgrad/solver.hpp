#pragma once

// Mirror descent with modulus-only step sizes, weighted averaging and
// trajectory recording.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "bsubgrad/bounds.hpp"
#include "bsubgrad/oracle.hpp"
#include "bsubgrad/problems.hpp"
#include "bsubgrad/prox.hpp"

namespace bsubgrad {

struct StepRule {
  StepRuleKind kind = StepRuleKind::ExactTheorem;
  double mu = 1.0;
};

/// 2 / (mu (k+1)) for the exact schedule, 4 / (mu (k+1)) for the inexact one.
double step_size(const StepRule& rule, std::uint64_t k);

/// Step schedule matched to each oracle model.
StepRuleKind matched_rule(const InexactnessModel& model);

/// x^_N = (N-1)/(N+1) x^_{N-1} + 2/(N+1) x_N, i.e. the running mean of x_k
/// with weights proportional to k. `prev` is ignored for N = 1.
Vector update_average(const Vector& prev, const Vector& x_new, std::uint64_t n_iter);

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double v);
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

struct RunOptions {
  InexactnessModel model = InexactnessModel::exact();
  std::optional<StepRuleKind> rule_override;
  std::uint64_t iterations = 1;
  std::uint64_t seed = 0;
  std::uint64_t log_every = 1;
  NoiseDirection direction = NoiseDirection::Random;
  NoiseMagnitude magnitude = NoiseMagnitude::Worst;
  /// Keep x_k at every checkpoint (memory: checkpoints * n doubles).
  bool store_iterates = false;
};

/// State at iteration k, taken after x^_k is formed and before the step to
/// x_{k+1}.
struct Checkpoint {
  std::uint64_t k = 0;
  double f_x = 0.0;
  double f_avg = 0.0;
  std::optional<double> gap_avg;
  std::optional<double> dist_avg;
  double grad_dual_norm = 0.0;
  std::optional<double> noisy_grad_dual_norm;
  Aggregates sums;

  bool operator==(const Checkpoint&) const = default;
};

struct RunRecord {
  RunOptions options;
  StepRule rule;
  bool rule_overridden = false;
  std::uint64_t iterations = 0;
  Vector x_hat;
  /// x_{N+1}, the point after the last step.
  Vector x_last;
  Aggregates sums;
  std::vector<Checkpoint> checkpoints;
  std::vector<std::pair<std::uint64_t, Vector>> iterates;
};

/// Runs N iterations of x_{k+1} = mirror_step(x_k, g~_k, gamma_k) from
/// initial_point. Checkpoints are taken when k % log_every == 0 and at k = N.
/// Deterministic given the options.
RunRecord run(const Problem& pr, const ProxSetup& ps, const RunOptions& options);

}  // namespace bsubgrad
