#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "bsubgrad/solver.hpp"
#include "../support/oracles.hpp"

using namespace bsubgrad;

TEST_CASE("step sizes") {
  CHECK(step_size({StepRuleKind::ExactTheorem, 2.0}, 3) == 0.25);
  CHECK(step_size({StepRuleKind::InexactTheorem, 2.0}, 3) == 0.5);
  CHECK(step_size({StepRuleKind::ExactTheorem, 1.0}, 1) == 1.0);
  CHECK_THROWS(step_size({StepRuleKind::ExactTheorem, 1.0}, 0));
  CHECK(matched_rule(InexactnessModel::exact()) == StepRuleKind::ExactTheorem);
  CHECK(matched_rule(InexactnessModel::relative(0.1)) == StepRuleKind::InexactTheorem);
  CHECK(matched_rule(InexactnessModel::absolute(0.0)) == StepRuleKind::InexactTheorem);
}

TEST_CASE("weighted average update") {
  Vector x1{1.0, 0.0};
  CHECK(update_average(Vector::zeros(2), x1, 1) == x1);
  Vector a2 = update_average(x1, {0.0, 1.0}, 2);
  CHECK(a2[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(a2[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  Vector v{0.25, -3.0};
  Vector acc = update_average(v, v, 1);
  for (std::uint64_t n = 2; n <= 3; ++n) acc = update_average(acc, v, n);
  CHECK(norm2(acc - v) <= 1e-15);
}

TEST_CASE("running average equals the direct weighted sum") {
  Problem p = make_example2({4, 10.0, 12, {}, 3});
  auto ps = ProxSetup::euclidean_ball(10.0);
  RunOptions o;
  o.iterations = 300;
  o.log_every = 1;
  o.store_iterates = true;
  RunRecord r = run(p, ps, o);
  REQUIRE(r.iterates.size() == 300);
  std::vector<std::vector<double>> xs;
  for (const auto& [k, x] : r.iterates) xs.push_back(x.data());
  auto ref = oracle::weighted_average(xs);
  for (std::size_t i = 0; i < 4; ++i) CHECK(r.x_hat[i] == doctest::Approx(ref[i]).epsilon(1e-12));
}

TEST_CASE("single step unrolls to a projected subgradient step") {
  Problem p = make_example1({3, 1.0, 0.5});
  auto ps = ProxSetup::euclidean_ball(1.0);
  RunOptions o;
  o.iterations = 1;
  RunRecord r = run(p, ps, o);
  Vector x1 = initial_point(p.set, 3);
  Vector x2 = project_ball(x1 - (2.0 / (p.mu * 2.0)) * p.subgrad(x1), 1.0);
  CHECK(r.x_last == x2);
  CHECK(r.x_hat == x1);
  REQUIRE(r.checkpoints.size() == 1);
  double g = norm2(p.subgrad(x1));
  CHECK(r.sums.s1 == doctest::Approx(0.5 * g * g).epsilon(1e-15));
  CHECK(r.sums.s2 == doctest::Approx(g * g).epsilon(1e-15));
}

TEST_CASE("zero subgradient leaves the iterate fixed") {
  Problem p;
  p.name = "constant";
  p.eval_f = [](const Vector&) { return 1.0; };
  p.subgrad = [](const Vector& x) { return Vector::zeros(x.dim()); };
  p.mu = 1.0;
  p.set = FeasibleSet::ball(2.0);
  p.dim = 2;
  RunOptions o;
  o.iterations = 50;
  o.log_every = 10;
  RunRecord r = run(p, ProxSetup::euclidean_ball(2.0), o);
  Vector x1 = initial_point(p.set, 2);
  CHECK(r.x_last == x1);
  CHECK(r.x_hat == x1);
  CHECK(r.sums.s1 == 0.0);
}

TEST_CASE("checkpoint schedule") {
  Problem p = make_example1({2, 1.0, 0.5});
  auto ps = ProxSetup::euclidean_ball(1.0);
  RunOptions o;
  o.iterations = 25;
  o.log_every = 10;
  RunRecord r = run(p, ps, o);
  REQUIRE(r.checkpoints.size() == 3);
  CHECK(r.checkpoints[0].k == 10);
  CHECK(r.checkpoints[1].k == 20);
  CHECK(r.checkpoints[2].k == 25);
  CHECK(r.checkpoints.back().sums == r.sums);
  CHECK_FALSE(r.checkpoints[0].noisy_grad_dual_norm);
}

TEST_CASE("runs are deterministic and zero-noise models reduce to the exact oracle") {
  Problem p = make_example1({20, 10.0, 0.5});
  auto ps = ProxSetup::euclidean_ball(10.0);
  RunOptions o;
  o.iterations = 500;
  o.log_every = 50;
  o.seed = 9;
  o.rule_override = StepRuleKind::InexactTheorem;
  RunRecord exact = run(p, ps, o);
  o.model = InexactnessModel::relative(0.0);
  RunRecord rel = run(p, ps, o);
  o.model = InexactnessModel::absolute(0.0);
  RunRecord abs = run(p, ps, o);
  CHECK(rel.x_hat == exact.x_hat);
  CHECK(abs.x_hat == exact.x_hat);
  CHECK(rel.sums.s1 == exact.sums.s1);
  for (std::size_t i = 0; i < exact.checkpoints.size(); ++i) {
    CHECK(rel.checkpoints[i].f_avg == exact.checkpoints[i].f_avg);
    CHECK(abs.checkpoints[i].gap_avg == exact.checkpoints[i].gap_avg);
  }

  o.model = InexactnessModel::relative(0.4);
  RunRecord a = run(p, ps, o);
  RunRecord b = run(p, ps, o);
  CHECK(a.x_hat == b.x_hat);
  CHECK(a.checkpoints == b.checkpoints);
}

TEST_CASE("certified gap on a small Example 1 run") {
  Problem p = make_example1({2, 1.0, 0.5});
  auto ps = ProxSetup::euclidean_ball(1.0);
  RunOptions o;
  o.iterations = 10000;
  o.log_every = 1000;
  RunRecord r = run(p, ps, o);
  double gap = p.eval_f(r.x_hat) - p.optimum->f_star;
  CHECK(gap <= bound_func_exact(r.sums, r.iterations, p.mu) * (1 + 1e-9));
  CHECK(norm2(r.x_hat) <= bound_dist_exact(r.sums, r.iterations, p.mu) * (1 + 1e-9));
}

TEST_CASE("entropy prox run converges on the simplex") {
  Problem p = make_entropy_linear({0.5, -1.0, 2.0, 0.0});
  auto ps = ProxSetup::entropy_simplex(4);
  RunOptions o;
  o.iterations = 5000;
  o.log_every = 500;
  RunRecord r = run(p, ps, o);
  CHECK(p.set.contains(r.x_hat));
  for (const auto& cp : r.checkpoints) {
    REQUIRE(cp.gap_avg);
    CHECK(*cp.gap_avg <= bound_func_exact(cp.sums, cp.k, p.mu) * (1 + 1e-9) + 1e-12);
  }
  CHECK(*r.checkpoints.back().gap_avg < 1e-3);
}

TEST_CASE("compensated sum") {
  CompensatedSum s;
  s.add(1e16);
  for (int i = 0; i < 1000; ++i) s.add(1.0);
  s.add(-1e16);
  CHECK(s.value() == 1000.0);
}
