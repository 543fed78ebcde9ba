#pragma once

// Exact and inexact subgradient oracles.

#include <cstdint>
#include <string>

#include "bsubgrad/problems.hpp"
#include "bsubgrad/rng.hpp"

namespace bsubgrad {

/// Exact | Relative(alpha) with alpha in [0,1) | Absolute(delta) with delta >= 0.
class InexactnessModel {
 public:
  enum class Kind { Exact, Relative, Absolute };

  static InexactnessModel exact() { return InexactnessModel(Kind::Exact, 0.0); }
  static InexactnessModel relative(double alpha);
  static InexactnessModel absolute(double delta);
  /// Grammar: `exact`, `relative:<alpha>`, `absolute:<delta>`.
  static InexactnessModel parse(const std::string& spec);

  Kind kind() const noexcept { return kind_; }
  double alpha() const noexcept { return kind_ == Kind::Relative ? param_ : 0.0; }
  double delta() const noexcept { return kind_ == Kind::Absolute ? param_ : 0.0; }
  double param() const noexcept { return param_; }
  std::string to_string() const;
  /// "exact", "relative" or "absolute".
  std::string kind_name() const;

  /// Error budget A for an exact subgradient with the given dual norm.
  double error_budget(double grad_dual_norm) const;
  /// Norm cap B = (1+alpha)||g||_* or delta + ||g||_*.
  double norm_cap(double grad_dual_norm) const;

  bool operator==(const InexactnessModel&) const = default;

 private:
  InexactnessModel(Kind kind, double param) : kind_(kind), param_(param) {}

  Kind kind_;
  double param_;
};

struct NoisySubgradient {
  Vector g_tilde;
  Vector g_exact;
  double error_norm = 0.0;
  double bound_a = 0.0;
  double bound_b = 0.0;
};

/// Worst: perturbation of norm exactly A. Uniform: A scaled by U[0,1].
enum class NoiseMagnitude { Worst, Uniform };
/// Random: isotropic direction. Adversarial: along x* - x.
enum class NoiseDirection { Random, Adversarial };

/// g~ = g + A u, with u a random unit dual-norm direction (normalised Gaussian
/// for Euclidean norms, a random sign pattern for the l1/linf pair).
NoisySubgradient query(const Problem& pr, const NormPair& norms, const InexactnessModel& model,
                       const Vector& x, Rng& rng,
                       NoiseMagnitude magnitude = NoiseMagnitude::Worst);

/// As `query`, but u points from x towards x_star. Falls back to a random
/// direction when x == x_star. Throws when the problem has no optimum.
NoisySubgradient adversarial_query(const Problem& pr, const NormPair& norms,
                                   const InexactnessModel& model, const Vector& x, Rng& rng,
                                   NoiseMagnitude magnitude = NoiseMagnitude::Worst);

/// Owns the random stream of one run.
class SubgradientOracle {
 public:
  SubgradientOracle(const Problem& pr, const NormPair& norms, InexactnessModel model,
                    std::uint64_t seed, NoiseDirection direction = NoiseDirection::Random,
                    NoiseMagnitude magnitude = NoiseMagnitude::Worst);

  NoisySubgradient operator()(const Vector& x);
  const InexactnessModel& model() const noexcept { return model_; }

 private:
  const Problem& problem_;
  NormPair norms_;
  InexactnessModel model_;
  Rng rng_;
  NoiseDirection direction_;
  NoiseMagnitude magnitude_;
};

}  // namespace bsubgrad
