// Minimum enclosing ball of a point set.
//
// Pivoting method of Fischer, Gaertner and Kutz (ESA 2003). The centre c is
// always equidistant from an affinely independent support set S and every
// point lies in the current ball. Each step walks c towards the circumcentre
// of S inside aff(S); a point reaching the boundary first stops the walk and
// joins S. At the circumcentre, c is optimal iff its affine coefficients over
// S are non-negative, otherwise the point with the most negative coefficient
// leaves S.

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Dense>

#include "bsubgrad/problems.hpp"

namespace bsubgrad {

namespace {

using Point = std::vector<double>;

double sq_dist(const Vector& a, const Point& c) {
  double s = 0.0;
  for (std::size_t j = 0; j < c.size(); ++j) {
    double t = a[j] - c[j];
    s += t * t;
  }
  return s;
}

struct Circumcentre {
  Point centre;
  std::vector<double> coeffs;  // affine coefficients over the support, summing to one
};

// Circumcentre of the support inside its affine hull: c = p0 + B mu with
// 2 B^T B mu = diag(B^T B), B holding the edge vectors p_k - p0.
Circumcentre circumcentre(const std::vector<Vector>& pts, const std::vector<std::size_t>& support) {
  const Vector& p0 = pts[support[0]];
  const std::size_t n = p0.dim();
  const std::size_t s = support.size();
  Circumcentre out{p0.data(), std::vector<double>(s, 0.0)};
  out.coeffs[0] = 1.0;
  if (s == 1) return out;

  Eigen::MatrixXd edges(n, s - 1);
  for (std::size_t k = 1; k < s; ++k)
    for (std::size_t j = 0; j < n; ++j) edges(j, k - 1) = pts[support[k]][j] - p0[j];
  Eigen::MatrixXd gram = 2.0 * edges.transpose() * edges;
  Eigen::VectorXd rhs = edges.colwise().squaredNorm().transpose();
  Eigen::VectorXd mu = gram.completeOrthogonalDecomposition().solve(rhs);
  Eigen::VectorXd shift = edges * mu;

  double rest = 0.0;
  for (std::size_t k = 1; k < s; ++k) {
    out.coeffs[k] = mu(static_cast<Eigen::Index>(k - 1));
    rest += out.coeffs[k];
  }
  out.coeffs[0] = 1.0 - rest;
  for (std::size_t j = 0; j < n; ++j) out.centre[j] += shift(static_cast<Eigen::Index>(j));
  return out;
}

}  // namespace

Optimum solve_meb(const std::vector<Vector>& anchors, const FeasibleSet& set) {
  if (anchors.empty()) throw std::invalid_argument("solve_meb: anchor list is empty");
  const std::size_t n = anchors.front().dim();
  for (const Vector& a : anchors) {
    if (a.dim() != n) throw std::invalid_argument("solve_meb: anchors have mixed dimensions");
    if (!set.contains(a)) throw std::invalid_argument("solve_meb: anchor lies outside the set");
  }
  const std::size_t m = anchors.size();

  Point c = anchors[0].data();
  std::size_t far = 0;
  for (std::size_t i = 1; i < m; ++i)
    if (sq_dist(anchors[i], c) > sq_dist(anchors[far], c)) far = i;
  std::vector<std::size_t> support{far};

  const std::size_t max_iter = 50 * (m + n) + 1000;
  bool done = false;
  for (std::size_t iter = 0; iter < max_iter && !done; ++iter) {
    Circumcentre target = circumcentre(anchors, support);
    Point d(n);
    double d_norm2 = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      d[j] = target.centre[j] - c[j];
      d_norm2 += d[j] * d[j];
    }
    double scale2 = 0.0;
    for (double v : c) scale2 += v * v;
    scale2 += sq_dist(anchors[support[0]], c);

    // A support of n+1 points spans the space, so c already is its
    // circumcentre; otherwise snap when the walk would be below rounding.
    if (support.size() > n || d_norm2 <= 1e-24 * (1.0 + scale2)) {
      // At the circumcentre: optimal unless some support point has a
      // negative coefficient.
      auto worst = std::min_element(target.coeffs.begin(), target.coeffs.end());
      if (*worst >= 0.0 || support.size() == 1) {
        c = target.centre;
        done = true;
      } else {
        support.erase(support.begin() + (worst - target.coeffs.begin()));
      }
      continue;
    }

    // Walk c + t d, t in [0, 1]; point p blocks at
    //   t_p = (r^2 - |p - c|^2) / (2 <s - p, d>)   when <s - p, d> > 0.
    const Vector& s0 = anchors[support[0]];
    double r2 = sq_dist(s0, c);
    double t_min = 1.0;
    std::size_t blocker = m;
    for (std::size_t i = 0; i < m; ++i) {
      if (std::find(support.begin(), support.end(), i) != support.end()) continue;
      double denom = 0.0;
      for (std::size_t j = 0; j < n; ++j) denom += (s0[j] - anchors[i][j]) * d[j];
      denom *= 2.0;
      if (denom <= 1e-15 * std::sqrt(d_norm2 * (1.0 + scale2))) continue;
      double t = std::max(0.0, (r2 - sq_dist(anchors[i], c)) / denom);
      if (t < t_min) {
        t_min = t;
        blocker = i;
      }
    }
    if (blocker == m) {
      c = target.centre;
    } else {
      for (std::size_t j = 0; j < n; ++j) c[j] += t_min * d[j];
      support.push_back(blocker);
    }
  }
  if (!done) throw std::runtime_error("solve_meb: pivoting did not converge");

  Vector x_star(std::move(c));
  if (!set.contains(x_star)) x_star = set.project(x_star);
  double f_star = 0.0;
  for (const Vector& a : anchors) f_star = std::max(f_star, sq_dist(a, x_star.data()));
  return Optimum{std::move(x_star), f_star};
}

}  // namespace bsubgrad
