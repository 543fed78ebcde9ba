#pragma once

// Closed-form convergence bounds evaluated from running trajectory sums.
//
// With g_k the exact subgradient at x_k and ||.||_* the dual norm:
//   S1 = sum k/(k+1) ||g_k||^2      S2 = sum ||g_k||^2      S3 = sum k ||g_k||^2
//   S4 = sum (delta + ||g_k||)^2    S5 = sum k/(k+1) ||g~_k||^2

#include <cstdint>
#include <optional>
#include <string>

#include "bsubgrad/oracle.hpp"

namespace bsubgrad {

struct Aggregates {
  double s1 = 0.0;
  double s2 = 0.0;
  double s3 = 0.0;
  double s4 = 0.0;
  double s5 = 0.0;
  /// The delta S4 was accumulated with.
  double delta = 0.0;

  bool operator==(const Aggregates&) const = default;
};

enum class StepRuleKind { ExactTheorem, InexactTheorem };
enum class LipschitzMode { Paper, Analytic };

std::string to_string(StepRuleKind kind);
std::string to_string(LipschitzMode mode);
StepRuleKind parse_step_rule(const std::string& text);
LipschitzMode parse_lipschitz_mode(const std::string& text);

/// 2 / (mu N (N+1)) * S1
double bound_func_exact(const Aggregates& agg, std::uint64_t n_iter, double mu);
/// 2 M^2 / (mu (N+1))
double bound_func_classical(std::uint64_t n_iter, double mu, double lipschitz);
/// 2 / (mu sqrt(N (N+1))) * sqrt(S1)
double bound_dist_exact(const Aggregates& agg, std::uint64_t n_iter, double mu);
/// 2 M / (mu sqrt(N+1))
double bound_dist_classical(std::uint64_t n_iter, double mu, double lipschitz);
/// 4 (1+a)^2 / (mu N (N+1)) * S2 + 2 a^2 / (mu N (N+1)) * S3
double bound_func_relative(const Aggregates& agg, std::uint64_t n_iter, double mu, double alpha);
/// 4 / (mu N (N+1)) * S4 + delta^2 / mu
double bound_func_absolute(const Aggregates& agg, std::uint64_t n_iter, double mu, double delta);
/// 2 sqrt2 (1+a) / (mu sqrt(N(N+1))) sqrt(S2) + 2 a / (mu sqrt(N(N+1))) sqrt(S3)
double bound_dist_relative(const Aggregates& agg, std::uint64_t n_iter, double mu, double alpha);
/// 2 sqrt2 / (mu sqrt(N(N+1))) sqrt(S4) + sqrt2 delta / mu
double bound_dist_absolute(const Aggregates& agg, std::uint64_t n_iter, double mu, double delta);

/// Smallest N >= 1 with N >= 2 M^2 / (mu eps) - 1.
std::uint64_t iterations_for_epsilon(double mu, double lipschitz, double eps);

struct BoundReport {
  std::uint64_t n_iter = 0;
  std::optional<double> func_new;
  std::optional<double> func_classical;
  std::optional<double> dist_new;
  std::optional<double> dist_classical;
  std::optional<double> func_relative;
  std::optional<double> func_absolute;
  std::optional<double> dist_relative;
  std::optional<double> dist_absolute;
  LipschitzMode lipschitz_mode = LipschitzMode::Analytic;

  /// The certified inexact bounds of the record's model, if any.
  std::optional<double> func_inexact() const;
  std::optional<double> dist_inexact() const;

  bool operator==(const BoundReport&) const = default;
};

/// Every bound that the (model, rule) pair certifies. Exact model with the
/// exact schedule gets the exact and classical bounds; any model with the
/// inexact schedule gets its inexact bounds (exact counts as alpha = 0 and
/// delta = 0); an inexact model under the exact schedule certifies nothing.
/// Classical bounds are omitted when `lipschitz` is empty.
BoundReport evaluate_bounds(const Aggregates& agg, std::uint64_t n_iter, double mu,
                            const InexactnessModel& model, StepRuleKind rule,
                            std::optional<double> lipschitz, LipschitzMode mode);

/// observed <= bound + 1e-9 * (1 + |scale|), the validity tolerance.
bool within_bound(double observed, double bound, double scale);

}  // namespace bsubgrad
