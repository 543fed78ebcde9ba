#pragma once

// Benchmark objectives and the problem abstraction consumed by the solver.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bsubgrad/prox.hpp"
#include "bsubgrad/rng.hpp"
#include "bsubgrad/vecspace.hpp"

namespace bsubgrad {

struct Optimum {
  Vector x_star;
  double f_star = 0.0;
};

/// Objective f with a deterministic subgradient selector, its relative strong
/// convexity modulus and Lipschitz estimates. Immutable after construction.
struct Problem {
  std::string name;
  std::function<double(const Vector&)> eval_f;
  std::function<Vector(const Vector&)> subgrad;
  double mu = 0.0;
  std::optional<double> lipschitz_paper;
  std::optional<double> lipschitz_analytic;
  std::optional<Optimum> optimum;
  FeasibleSet set = FeasibleSet::ball(1.0);
  std::size_t dim = 0;
};

struct Example1Params {
  std::size_t n = 0;
  double radius = 0.0;
  double gamma_coef = 0.0;
};

struct Example2Params {
  std::size_t n = 0;
  double radius = 0.0;
  std::size_t m = 0;
  /// When empty, m anchors are drawn uniformly in the ball of radius R/2.
  std::vector<Vector> anchors;
  std::uint64_t seed = 0;
};

/// f(x) = ||x||_2 + 2 gamma ||x||_2^2 on the ball; mu = 2 gamma.
Problem make_example1(const Example1Params& p);

/// f(x) = max_i ||x - A_i||_2^2 on the ball; mu = 2. The optimum is the
/// minimum-enclosing-ball centre of the anchors.
Problem make_example2(const Example2Params& p);

/// f(x) = sum x_i ln x_i + <c, x> on the simplex. Its Bregman divergence is
/// exactly the entropy one, so mu = 1 relative to EntropySimplex, and the
/// minimiser is softmax(-c).
Problem make_entropy_linear(const Vector& c);

/// Uniform draws in the ball of the given radius (seeded).
std::vector<Vector> sample_anchors(std::size_t n, std::size_t m, double radius, std::uint64_t seed);

/// Reads one anchor per line, whitespace-separated decimals. Blank lines and
/// lines starting with '#' are skipped.
std::vector<Vector> load_anchors(const std::string& path);

/// Centre and squared radius of the smallest ball containing all anchors.
/// Exact pivoting method over affinely independent support sets; the result
/// satisfies the optimality conditions up to rounding.
Optimum solve_meb(const std::vector<Vector>& anchors, const FeasibleSet& set);

/// (R/sqrt(n), ..., R/sqrt(n)) for a ball; the uniform point for a simplex.
Vector initial_point(const FeasibleSet& set, std::size_t n);

/// Uniform draw from the set (Dirichlet(1) for the simplex).
Vector sample_feasible(const FeasibleSet& set, std::size_t n, Rng& rng);

/// Largest sampled value of f(x) + <g(x), y - x> + mu V(y, x) - f(y).
/// Non-positive up to rounding when (mu, subgrad) is valid.
double validate_relative_strong_convexity(const Problem& pr, const ProxSetup& ps,
                                          std::size_t samples, std::uint64_t seed);

}  // namespace bsubgrad
