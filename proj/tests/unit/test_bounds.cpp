#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "bsubgrad/bounds.hpp"

using namespace bsubgrad;

namespace {

// Aggregates of a dual-norm history written out from the definitions.
Aggregates history(const std::vector<double>& g, double delta = 0.0) {
  Aggregates a;
  a.delta = delta;
  for (std::size_t i = 0; i < g.size(); ++i) {
    double k = static_cast<double>(i + 1);
    a.s1 += k / (k + 1) * g[i] * g[i];
    a.s2 += g[i] * g[i];
    a.s3 += k * g[i] * g[i];
    a.s4 += (delta + g[i]) * (delta + g[i]);
  }
  return a;
}

}  // namespace

TEST_CASE("exact-model bounds") {
  CHECK(bound_func_exact(history({2.0}), 1, 1.0) == doctest::Approx(2.0));
  CHECK(bound_func_exact(history({2.0, 2.0}), 2, 1.0) == doctest::Approx(14.0 / 9.0));
  CHECK(bound_func_exact(history({0.0, 0.0}), 2, 1.0) == 0.0);
  CHECK(bound_dist_exact(history({2.0, 2.0}), 2, 1.0) ==
        doctest::Approx(2.0 / std::sqrt(6.0) * std::sqrt(14.0 / 3.0)));
  CHECK(bound_dist_exact(history({2.0, 2.0}), 2, 1.0) == doctest::Approx(1.7638).epsilon(1e-4));
  CHECK(bound_dist_exact(history({0.0}), 1, 1.0) == 0.0);
}

TEST_CASE("classical bounds and comparison") {
  CHECK(bound_func_classical(2, 1.0, 2.0) == doctest::Approx(8.0 / 3.0));
  CHECK(bound_func_classical(1, 1.0, 1.0) == 1.0);
  CHECK(bound_func_exact(history({2.0, 2.0}), 2, 1.0) < bound_func_classical(2, 1.0, 2.0));
  CHECK(bound_dist_classical(2, 1.0, 2.0) == doctest::Approx(4.0 / std::sqrt(3.0)));
  CHECK(bound_dist_exact(history({2.0, 2.0}), 2, 1.0) < bound_dist_classical(2, 1.0, 2.0));
}

TEST_CASE("relative bounds") {
  Aggregates a = history({1.0});
  CHECK(bound_func_relative(a, 1, 1.0, 0.5) == doctest::Approx(4.75));
  Aggregates h = history({1.0, 3.0, 0.5, 2.0});
  CHECK(bound_func_relative(h, 4, 1.0, 0.0) == doctest::Approx(4.0 / 20.0 * h.s2));
  double prev = -1.0;
  for (int i = 0; i < 10; ++i) {
    double v = bound_func_relative(h, 4, 1.0, 0.1 * i);
    CHECK(v > prev);
    prev = v;
  }
  CHECK(bound_dist_relative(a, 1, 1.0, 0.0) == doctest::Approx(2.0));
  CHECK(bound_dist_relative(history({0.0}), 1, 1.0, 0.0) == 0.0);
}

TEST_CASE("absolute bounds") {
  CHECK(bound_func_absolute(history({1.0}, 1.0), 1, 1.0, 1.0) == doctest::Approx(9.0));
  Aggregates h = history({1.0, 3.0, 0.5, 2.0});
  CHECK(bound_func_absolute(h, 4, 1.0, 0.0) == doctest::Approx(4.0 / 20.0 * h.s2));
  CHECK(bound_dist_absolute(history({1.0}), 1, 1.0, 0.0) == doctest::Approx(2.0));
  CHECK(bound_dist_absolute(history({0.0}, 1.0), 1, 1.0, 1.0) ==
        doctest::Approx(2.0 + std::sqrt(2.0)));
  CHECK_THROWS(bound_func_absolute(history({1.0}, 0.5), 1, 1.0, 1.0));
}

TEST_CASE("absolute bounds keep a noise floor") {
  const double delta = 0.1, mu = 2.0;
  for (std::uint64_t n : {100ull, 10000ull, 1000000ull}) {
    // Constant unit gradients: S4 = N (1 + delta)^2.
    Aggregates a;
    a.delta = delta;
    a.s4 = static_cast<double>(n) * (1 + delta) * (1 + delta);
    double f = bound_func_absolute(a, n, mu, delta);
    double d = bound_dist_absolute(a, n, mu, delta);
    CHECK(f > delta * delta / mu);
    CHECK(d > std::sqrt(2.0) * delta / mu);
    if (n == 1000000) {
      CHECK(f - delta * delta / mu < 1e-5);
      CHECK(d - std::sqrt(2.0) * delta / mu < 1e-2);
    }
  }
}

TEST_CASE("iteration counts") {
  CHECK(iterations_for_epsilon(1.0, 1.0, 1.0) == 1);
  CHECK(iterations_for_epsilon(1.0, 2.0, 0.1) == 79);
  CHECK(iterations_for_epsilon(1.0, 0.1, 10.0) == 1);
  CHECK_THROWS(iterations_for_epsilon(0.0, 1.0, 1.0));
  for (double m : {10.0, 20.0, 40.0}) {
    double ratio = static_cast<double>(iterations_for_epsilon(1.0, 2 * m, 1e-3)) /
                   static_cast<double>(iterations_for_epsilon(1.0, m, 1e-3));
    CHECK(ratio == doctest::Approx(4.0).epsilon(1e-4));
  }
}

TEST_CASE("bound applicability per model and step rule") {
  Aggregates a = history({1.0, 2.0});
  auto exact = evaluate_bounds(a, 2, 1.0, InexactnessModel::exact(), StepRuleKind::ExactTheorem, 3.0,
                               LipschitzMode::Analytic);
  CHECK(exact.func_new);
  CHECK(exact.func_classical);
  CHECK_FALSE(exact.func_inexact());

  auto mismatched = evaluate_bounds(a, 2, 1.0, InexactnessModel::relative(0.2),
                                    StepRuleKind::ExactTheorem, 3.0, LipschitzMode::Analytic);
  CHECK_FALSE(mismatched.func_new);
  CHECK_FALSE(mismatched.func_inexact());

  auto rel = evaluate_bounds(a, 2, 1.0, InexactnessModel::relative(0.2),
                             StepRuleKind::InexactTheorem, 3.0, LipschitzMode::Analytic);
  CHECK(*rel.func_inexact() == bound_func_relative(a, 2, 1.0, 0.2));
  CHECK_FALSE(rel.func_new);

  auto no_lip = evaluate_bounds(a, 2, 1.0, InexactnessModel::exact(), StepRuleKind::ExactTheorem,
                                std::nullopt, LipschitzMode::Analytic);
  CHECK_FALSE(no_lip.func_classical);

  CHECK(within_bound(1.0, 1.0, 1.0));
  CHECK(within_bound(1.0 + 1e-10, 1.0, 1.0));
  CHECK_FALSE(within_bound(1.0 + 1e-8, 1.0, 1.0));
}
