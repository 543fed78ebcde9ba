#include "bsubgrad/problems.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "bsubgrad/rng.hpp"

namespace bsubgrad {

namespace {

void require_dim(const Vector& x, std::size_t n, const char* what) {
  if (x.dim() != n) {
    std::ostringstream os;
    os << what << ": expected dimension " << n << ", got " << x.dim();
    throw std::invalid_argument(os.str());
  }
}

}  // namespace

Problem make_example1(const Example1Params& p) {
  if (p.n == 0) throw std::invalid_argument("example1: n must be >= 1");
  if (!(p.radius > 0.0)) throw std::invalid_argument("example1: radius must be positive");
  if (!(p.gamma_coef > 0.0)) throw std::invalid_argument("example1: gamma must be positive");

  const double g = p.gamma_coef;
  const std::size_t n = p.n;
  Problem pr;
  pr.name = "ex1";
  pr.dim = n;
  pr.set = FeasibleSet::ball(p.radius);
  pr.eval_f = [g, n](const Vector& x) {
    require_dim(x, n, "ex1 f");
    double nx = norm2(x);
    return nx + 2.0 * g * nx * nx;
  };
  pr.subgrad = [g, n](const Vector& x) {
    require_dim(x, n, "ex1 subgradient");
    double nx = norm2(x);
    // 0 is in the subdifferential at the kink.
    if (nx == 0.0) return Vector::zeros(x.dim());
    std::vector<double> out(x.dim());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = x[i] / nx + 4.0 * g * x[i];
    return Vector(std::move(out));
  };
  pr.mu = 2.0 * g;
  pr.lipschitz_paper = 1.0 + 2.0 * g * p.radius;
  pr.lipschitz_analytic = 1.0 + 4.0 * g * p.radius;
  pr.optimum = Optimum{Vector::zeros(n), 0.0};
  return pr;
}

Problem make_example2(const Example2Params& p) {
  if (p.n == 0) throw std::invalid_argument("example2: n must be >= 1");
  if (!(p.radius > 0.0)) throw std::invalid_argument("example2: radius must be positive");

  std::vector<Vector> anchors = p.anchors;
  if (anchors.empty()) {
    if (p.m == 0) throw std::invalid_argument("example2: anchor list is empty");
    anchors = sample_anchors(p.n, p.m, 0.5 * p.radius, p.seed);
  } else if (p.m != 0 && p.m != anchors.size()) {
    throw std::invalid_argument("example2: m does not match the number of supplied anchors");
  }

  const FeasibleSet set = FeasibleSet::ball(p.radius);
  double max_norm = 0.0;
  for (const Vector& a : anchors) {
    require_dim(a, p.n, "example2 anchor");
    if (!set.contains(a)) throw std::invalid_argument("example2: anchor lies outside the ball");
    max_norm = std::max(max_norm, norm2(a));
  }

  auto shared = std::make_shared<const std::vector<Vector>>(std::move(anchors));
  const std::size_t n = p.n;

  // Smallest index wins ties.
  auto farthest = [shared, n](const Vector& x) {
    require_dim(x, n, "ex2");
    std::size_t best = 0;
    double best_d = -1.0;
    for (std::size_t i = 0; i < shared->size(); ++i) {
      const Vector& a = (*shared)[i];
      double d = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        double t = x[j] - a[j];
        d += t * t;
      }
      if (d > best_d) {
        best_d = d;
        best = i;
      }
    }
    return std::pair{best, best_d};
  };

  Problem pr;
  pr.name = "ex2";
  pr.dim = n;
  pr.set = set;
  pr.eval_f = [farthest](const Vector& x) { return farthest(x).second; };
  pr.subgrad = [farthest, shared](const Vector& x) {
    const Vector& a = (*shared)[farthest(x).first];
    std::vector<double> out(x.dim());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = 2.0 * (x[i] - a[i]);
    return Vector(std::move(out));
  };
  pr.mu = 2.0;
  pr.lipschitz_paper = 2.0 * (p.radius + max_norm);
  pr.lipschitz_analytic = pr.lipschitz_paper;

  Optimum opt = solve_meb(*shared, set);
  opt.f_star = pr.eval_f(opt.x_star);
  pr.optimum = std::move(opt);
  return pr;
}

Problem make_entropy_linear(const Vector& c) {
  const std::size_t n = c.dim();
  Problem pr;
  pr.name = "entropy-linear";
  pr.dim = n;
  pr.set = FeasibleSet::simplex(n);
  pr.eval_f = [c](const Vector& x) {
    require_dim(x, c.dim(), "entropy-linear f");
    double s = 0.0;
    for (std::size_t i = 0; i < x.dim(); ++i) {
      if (x[i] < 0.0) throw std::domain_error("entropy-linear f: negative coordinate");
      s += (x[i] > 0.0 ? x[i] * std::log(x[i]) : 0.0) + c[i] * x[i];
    }
    return s;
  };
  pr.subgrad = [c](const Vector& x) {
    require_dim(x, c.dim(), "entropy-linear subgradient");
    std::vector<double> g(x.dim());
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (!(x[i] > 0.0)) throw std::domain_error("entropy-linear subgradient: boundary point");
      g[i] = 1.0 + std::log(x[i]) + c[i];
    }
    return Vector(std::move(g));
  };
  pr.mu = 1.0;

  double shift = -c[0];
  for (std::size_t i = 1; i < n; ++i) shift = std::max(shift, -c[i]);
  std::vector<double> w(n);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) total += (w[i] = std::exp(-c[i] - shift));
  for (double& v : w) v /= total;
  Vector xs(std::move(w));
  double fs = pr.eval_f(xs);
  pr.optimum = Optimum{std::move(xs), fs};
  return pr;
}

std::vector<Vector> sample_anchors(std::size_t n, std::size_t m, double radius,
                                   std::uint64_t seed) {
  Rng rng(seed);
  FeasibleSet ball = FeasibleSet::ball(radius);
  std::vector<Vector> out;
  out.reserve(m);
  for (std::size_t i = 0; i < m; ++i) out.push_back(sample_feasible(ball, n, rng));
  return out;
}

std::vector<Vector> load_anchors(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open anchor file: " + path);
  std::vector<Vector> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    std::vector<double> coords;
    std::string tok;
    while (ls >> tok) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size() || !std::isfinite(v)) {
        throw std::invalid_argument("anchor file " + path + " line " + std::to_string(lineno) +
                                    ": bad number '" + tok + "'");
      }
      coords.push_back(v);
    }
    if (!out.empty() && coords.size() != out.front().dim()) {
      throw std::invalid_argument("anchor file " + path + " line " + std::to_string(lineno) +
                                  ": inconsistent dimension");
    }
    out.emplace_back(std::move(coords));
  }
  if (out.empty()) throw std::invalid_argument("anchor file " + path + " has no anchors");
  return out;
}

Vector initial_point(const FeasibleSet& set, std::size_t n) {
  if (n == 0) throw std::invalid_argument("initial_point: n must be >= 1");
  if (set.kind() == SetKind::Ball)
    return Vector::filled(n, set.radius() / std::sqrt(static_cast<double>(n)));
  if (set.simplex_dim() != n) throw std::invalid_argument("initial_point: simplex dimension mismatch");
  return Vector::filled(n, 1.0 / static_cast<double>(n));
}

Vector sample_feasible(const FeasibleSet& set, std::size_t n, Rng& rng) {
  std::vector<double> v(n);
  if (set.kind() == SetKind::Ball) {
    double s = 0.0;
    for (double& c : v) {
      c = rng.normal();
      s += c * c;
    }
    double scale = set.radius() * std::pow(rng.uniform(), 1.0 / static_cast<double>(n)) /
                   std::sqrt(std::max(s, 1e-300));
    for (double& c : v) c *= scale;
    return Vector(std::move(v));
  }
  double total = 0.0;
  for (double& c : v) total += (c = -std::log(rng.uniform_open_low()) + 1e-300);
  for (double& c : v) c /= total;
  return Vector(std::move(v));
}

double validate_relative_strong_convexity(const Problem& pr, const ProxSetup& ps,
                                          std::size_t samples, std::uint64_t seed) {
  if (!(pr.set == ps.set())) throw std::invalid_argument("problem and prox setup use different sets");
  Rng rng(seed);
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < samples; ++s) {
    Vector x = sample_feasible(pr.set, pr.dim, rng);
    Vector y = sample_feasible(pr.set, pr.dim, rng);
    // Every eighth pair probes the reference optimum, where kinks live.
    if (pr.optimum && s % 8 == 7) {
      if (s % 16 == 7)
        x = pr.optimum->x_star;
      else
        y = pr.optimum->x_star;
    }
    double v = pr.eval_f(x) + dot(pr.subgrad(x), y - x) + pr.mu * bregman(ps, y, x) - pr.eval_f(y);
    worst = std::max(worst, v);
  }
  return worst;
}

}  // namespace bsubgrad
