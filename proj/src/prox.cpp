#include "bsubgrad/prox.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bsubgrad {

namespace {

void require_positive(const Vector& y, const char* what) {
  for (double c : y.coords()) {
    if (!(c > 0.0)) {
      throw std::domain_error(std::string(what) +
                              ": entropy prox needs strictly positive coordinates");
    }
  }
}

void require_in_set(const ProxSetup& ps, const Vector& x, const char* what) {
  if (!ps.set().contains(x)) {
    throw std::invalid_argument(std::string(what) + ": point lies outside " +
                                ps.set().describe());
  }
}

double xlogx(double v) { return v > 0.0 ? v * std::log(v) : 0.0; }

}  // namespace

ProxSetup ProxSetup::euclidean_ball(double radius) {
  return ProxSetup(ProxKind::EuclideanBall, FeasibleSet::ball(radius),
                   NormPair{NormKind::Euclidean});
}

ProxSetup ProxSetup::entropy_simplex(std::size_t n) {
  return ProxSetup(ProxKind::EntropySimplex, FeasibleSet::simplex(n), NormPair{NormKind::L1Linf});
}

double ProxSetup::psi(const Vector& x) const {
  if (kind_ == ProxKind::EuclideanBall) return 0.5 * dot(x, x);
  double s = 0.0;
  for (double c : x.coords()) {
    if (c < 0.0) throw std::domain_error("psi: negative coordinate under entropy prox");
    s += xlogx(c);
  }
  return s;
}

Vector ProxSetup::grad_psi(const Vector& x) const {
  if (kind_ == ProxKind::EuclideanBall) return x;
  require_positive(x, "grad_psi");
  std::vector<double> g(x.dim());
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = 1.0 + std::log(x[i]);
  return Vector(std::move(g));
}

double bregman(const ProxSetup& ps, const Vector& x, const Vector& y) {
  require_same_dim(x, y, "bregman");
  if (ps.kind() == ProxKind::EuclideanBall) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.dim(); ++i) {
      double d = x[i] - y[i];
      s += d * d;
    }
    return 0.5 * s;
  }
  require_positive(y, "bregman");
  // sum x ln(x/y) - x + y; the linear terms cancel only on the exact simplex,
  // so they are kept.
  double s = 0.0;
  for (std::size_t i = 0; i < x.dim(); ++i) {
    if (x[i] < 0.0) throw std::domain_error("bregman: negative coordinate under entropy prox");
    double term = x[i] > 0.0 ? x[i] * std::log(x[i] / y[i]) : 0.0;
    s += term - x[i] + y[i];
  }
  return std::max(s, 0.0);
}

Vector mirror_step(const ProxSetup& ps, const Vector& x, const Vector& g, double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma))
    throw std::invalid_argument("mirror_step: step size must be positive");
  require_same_dim(x, g, "mirror_step");
  require_in_set(ps, x, "mirror_step");

  if (ps.kind() == ProxKind::EuclideanBall) return project_ball(axpy(x, -gamma, g), ps.set().radius());

  require_positive(x, "mirror_step");
  const std::size_t n = x.dim();
  double shift = -gamma * g[0];
  for (std::size_t i = 1; i < n; ++i) shift = std::max(shift, -gamma * g[i]);
  std::vector<double> w(n);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = x[i] * std::exp(-gamma * g[i] - shift);
    total += w[i];
  }
  for (double& v : w) {
    v /= total;
    if (!(v > 0.0)) throw std::domain_error("mirror_step: entropy update underflowed to the simplex boundary");
  }
  return Vector(std::move(w));
}

double check_three_points(const ProxSetup& ps, const Vector& a, const Vector& b,
                          const Vector& c) {
  double lhs = dot(ps.grad_psi(b) - ps.grad_psi(a), c - a);
  double rhs = bregman(ps, c, a) + bregman(ps, a, b) - bregman(ps, c, b);
  return std::abs(lhs - rhs);
}

bool check_fenchel_young(const ProxSetup& ps, const Vector& a, const Vector& b, double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("check_fenchel_young: lambda must be positive");
  double lhs = std::abs(dot(a, b));
  double pa = ps.norms().primal(a);
  double db = ps.norms().dual(b);
  double rhs = pa * pa / (2.0 * lambda) + lambda * db * db / 2.0;
  return lhs <= rhs * (1.0 + 1e-12);
}

}  // namespace bsubgrad
