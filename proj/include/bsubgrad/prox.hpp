#pragma once

// Prox functions, Bregman divergences and the closed-form mirror step.

#include "bsubgrad/vecspace.hpp"

namespace bsubgrad {

enum class ProxKind { EuclideanBall, EntropySimplex };

/// A 1-strongly convex prox function bound to its feasible set and norm pair.
///
/// EuclideanBall:  psi(x) = 0.5 ||x||_2^2 on the ball of radius R, l2 norms.
/// EntropySimplex: psi(x) = sum x_i ln x_i on the simplex, l1/linf norms.
class ProxSetup {
 public:
  static ProxSetup euclidean_ball(double radius);
  static ProxSetup entropy_simplex(std::size_t n);

  ProxKind kind() const noexcept { return kind_; }
  const FeasibleSet& set() const noexcept { return set_; }
  const NormPair& norms() const noexcept { return norms_; }

  double psi(const Vector& x) const;
  Vector grad_psi(const Vector& x) const;

 private:
  ProxSetup(ProxKind kind, FeasibleSet set, NormPair norms)
      : kind_(kind), set_(set), norms_(norms) {}

  ProxKind kind_;
  FeasibleSet set_;
  NormPair norms_;
};

/// V(x, y) = psi(x) - psi(y) - <grad psi(y), x - y>. Closed forms per kind:
/// 0.5 ||x - y||^2 for the ball, the KL divergence for the simplex. Entropy
/// requires y strictly positive.
double bregman(const ProxSetup& ps, const Vector& x, const Vector& y);

/// argmin_{u in Q} { <g, u> + V(u, x) / gamma }.
Vector mirror_step(const ProxSetup& ps, const Vector& x, const Vector& g, double gamma);

/// |<grad psi(b) - grad psi(a), c - a> - (V(c,a) + V(a,b) - V(c,b))|
double check_three_points(const ProxSetup& ps, const Vector& a, const Vector& b,
                          const Vector& c);

/// |<a,b>| <= ||a||^2 / (2 lambda) + lambda ||b||_*^2 / 2 within 1e-12
/// relative slack.
bool check_fenchel_young(const ProxSetup& ps, const Vector& a, const Vector& b, double lambda);

}  // namespace bsubgrad
