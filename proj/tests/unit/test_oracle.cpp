#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "bsubgrad/oracle.hpp"

using namespace bsubgrad;

namespace {

// A fixed linear objective with a prescribed gradient.
Problem linear(const Vector& g) {
  Problem p;
  p.name = "linear";
  p.eval_f = [g](const Vector& x) { return dot(g, x); };
  p.subgrad = [g](const Vector&) { return g; };
  p.mu = 1.0;
  p.set = FeasibleSet::ball(10.0);
  p.dim = g.dim();
  p.optimum = Optimum{Vector::zeros(g.dim()), 0.0};
  return p;
}

const NormPair kEu{NormKind::Euclidean};
const NormPair kL1{NormKind::L1Linf};

}  // namespace

TEST_CASE("model parsing") {
  CHECK(InexactnessModel::parse("exact") == InexactnessModel::exact());
  CHECK(InexactnessModel::parse("relative:0.25").alpha() == 0.25);
  CHECK(InexactnessModel::parse("absolute:1e-2").delta() == 0.01);
  CHECK(InexactnessModel::relative(0.1).to_string() == "relative:0.1");
  CHECK_THROWS_AS(InexactnessModel::parse("relative:1.5"), std::invalid_argument);
  CHECK_THROWS_AS(InexactnessModel::parse("relative:1"), std::invalid_argument);
  CHECK_THROWS_AS(InexactnessModel::parse("absolute:-1"), std::invalid_argument);
  CHECK_THROWS_AS(InexactnessModel::parse("relative:"), std::invalid_argument);
  CHECK_THROWS_AS(InexactnessModel::parse("relative:0.1x"), std::invalid_argument);
  CHECK_THROWS_AS(InexactnessModel::parse("noisy:0.1"), std::invalid_argument);
}

TEST_CASE("exact and zero-radius oracles return the exact subgradient") {
  Problem p = linear({3.0, 4.0});
  Rng rng(1);
  for (auto m : {InexactnessModel::exact(), InexactnessModel::relative(0.0),
                 InexactnessModel::absolute(0.0)}) {
    auto q = query(p, kEu, m, {1.0, 1.0}, rng);
    CHECK(q.g_tilde == q.g_exact);
    CHECK(q.error_norm == 0.0);
  }
}

TEST_CASE("worst-magnitude noise uses the full budget") {
  Problem p = linear({3.0, 4.0});
  Rng rng(2);
  for (int t = 0; t < 100; ++t) {
    auto q = query(p, kEu, InexactnessModel::relative(0.2), {1.0, 1.0}, rng);
    CHECK(q.error_norm == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(norm2(q.g_tilde - q.g_exact) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(norm2(q.g_tilde) <= 6.0 * (1 + 1e-12));

    auto r = query(p, kL1, InexactnessModel::absolute(0.5), {1.0, 1.0}, rng);
    CHECK(norm_inf(r.g_tilde - r.g_exact) == doctest::Approx(0.5).epsilon(1e-14));
  }
}

TEST_CASE("uniform-magnitude noise stays within the budget") {
  Problem p = linear({3.0, 4.0});
  Rng rng(3);
  double smallest = 1.0;
  for (int t = 0; t < 200; ++t) {
    auto q = query(p, kEu, InexactnessModel::absolute(1.0), {1.0, 1.0}, rng,
                   NoiseMagnitude::Uniform);
    CHECK(q.error_norm <= 1.0 + 1e-12);
    smallest = std::min(smallest, q.error_norm);
  }
  CHECK(smallest < 0.5);
}

TEST_CASE("adversarial noise points towards the optimum") {
  Problem p = linear({3.0, 4.0});
  Rng rng(4);
  auto q = adversarial_query(p, kEu, InexactnessModel::absolute(0.5), {2.0, 0.0}, rng);
  CHECK(q.error_norm == doctest::Approx(0.5));
  Vector e = q.g_tilde - q.g_exact;
  CHECK(e[0] == doctest::Approx(-0.5));
  CHECK(e[1] == doctest::Approx(0.0));

  // At the optimum the direction is degenerate: random fallback, full budget.
  auto z = adversarial_query(p, kEu, InexactnessModel::absolute(0.5), {0.0, 0.0}, rng);
  CHECK(z.error_norm == doctest::Approx(0.5));

  Problem no_opt = p;
  no_opt.optimum.reset();
  CHECK_THROWS(adversarial_query(no_opt, kEu, InexactnessModel::absolute(0.5), {1.0, 0.0}, rng));
}

TEST_CASE("oracle streams are reproducible") {
  Problem p = linear({1.0, -2.0, 0.5});
  SubgradientOracle a(p, kEu, InexactnessModel::relative(0.3), 42);
  SubgradientOracle b(p, kEu, InexactnessModel::relative(0.3), 42);
  SubgradientOracle c(p, kEu, InexactnessModel::relative(0.3), 43);
  bool differs = false;
  for (int t = 0; t < 20; ++t) {
    Vector x{0.1 * t, 0.0, 1.0};
    auto qa = a(x), qb = b(x), qc = c(x);
    CHECK(qa.g_tilde == qb.g_tilde);
    differs = differs || !(qa.g_tilde == qc.g_tilde);
  }
  CHECK(differs);
}
