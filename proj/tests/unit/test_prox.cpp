#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "bsubgrad/problems.hpp"
#include "bsubgrad/prox.hpp"
#include "bsubgrad/rng.hpp"

using namespace bsubgrad;

namespace {

// KL(x || y) written out term by term in long double.
long double kl_reference(const std::vector<double>& x, const std::vector<double>& y) {
  long double s = 0.0L;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] > 0) s += static_cast<long double>(x[i]) * std::log(static_cast<long double>(x[i]) / y[i]);
  return s;
}

Vector random_normal(Rng& rng, std::size_t n, double scale) {
  std::vector<double> c(n);
  for (double& v : c) v = scale * rng.normal();
  return Vector(c);
}

Vector strictly_positive_simplex(Rng& rng, std::size_t n) {
  Vector x = sample_feasible(FeasibleSet::simplex(n), n, rng);
  // Dirichlet(1) draws are positive with probability one; mix in the centre to
  // keep logarithms well-conditioned.
  return axpy(0.9 * x, 0.1, Vector::filled(n, 1.0 / static_cast<double>(n)));
}

}  // namespace

TEST_CASE("Bregman divergence closed forms") {
  auto eu = ProxSetup::euclidean_ball(5.0);
  CHECK(bregman(eu, {1.0, 0.0}, {0.0, 0.0}) == 0.5);
  CHECK(bregman(eu, {1.0, 2.0}, {1.0, 2.0}) == 0.0);

  auto en = ProxSetup::entropy_simplex(2);
  double v = bregman(en, {0.5, 0.5}, {0.25, 0.75});
  CHECK(std::abs(v - static_cast<double>(kl_reference({0.5, 0.5}, {0.25, 0.75}))) <= 1e-15);
  CHECK(std::abs(v - 0.143841036225890) <= 1e-12);
  CHECK(bregman(en, {0.3, 0.7}, {0.3, 0.7}) == 0.0);
  CHECK_THROWS_AS(bregman(en, {0.5, 0.5}, {1.0, 0.0}), std::domain_error);
}

TEST_CASE("mirror step closed forms") {
  auto eu = ProxSetup::euclidean_ball(1.0);
  CHECK(mirror_step(eu, {0.0, 0.0}, {2.0, 0.0}, 1.0) == Vector({-1.0, 0.0}));
  CHECK(mirror_step(eu, {0.3, 0.4}, {0.0, 0.0}, 7.0) == Vector({0.3, 0.4}));

  auto en = ProxSetup::entropy_simplex(2);
  Vector s = mirror_step(en, {0.5, 0.5}, {std::log(2.0), 0.0}, 1.0);
  CHECK(std::abs(s[0] - 1.0 / 3.0) <= 1e-15);
  CHECK(std::abs(s[1] - 2.0 / 3.0) <= 1e-15);
  CHECK(mirror_step(en, {0.2, 0.8}, {0.0, 0.0}, 3.0) == Vector({0.2, 0.8}));

  CHECK_THROWS_AS(mirror_step(eu, {0.0, 0.0}, {1.0, 0.0}, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(mirror_step(eu, {2.0, 0.0}, {1.0, 0.0}, 1.0), std::invalid_argument);
}

TEST_CASE("entropy mirror step shifts large exponents") {
  auto en = ProxSetup::entropy_simplex(3);
  // exp(1000) overflows without the max shift.
  Vector s = mirror_step(en, {0.2, 0.3, 0.5}, {-1000.0, -1000.5, -999.0}, 1.0);
  CHECK(FeasibleSet::simplex(3).contains(s));
  double w0 = 0.2, w1 = 0.3 * std::exp(0.5), w2 = 0.5 * std::exp(-1.0);
  CHECK(s[1] == doctest::Approx(w1 / (w0 + w1 + w2)).epsilon(1e-14));
  // A coordinate that underflows to zero would leave the entropy domain.
  CHECK_THROWS_AS(mirror_step(en, {0.2, 0.3, 0.5}, {1e6, 0.0, 1e6}, 1.0), std::domain_error);
}

TEST_CASE("three-points identity") {
  auto eu = ProxSetup::euclidean_ball(3.0);
  CHECK(check_three_points(eu, {1.0, 1.0}, {1.0, 1.0}, {1.0, 1.0}) == 0.0);
  CHECK(check_three_points(eu, {0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}) == 0.0);

  Rng rng(17);
  auto en = ProxSetup::entropy_simplex(6);
  for (int t = 0; t < 1000; ++t) {
    Vector a = strictly_positive_simplex(rng, 6);
    Vector b = strictly_positive_simplex(rng, 6);
    Vector c = strictly_positive_simplex(rng, 6);
    CHECK(check_three_points(en, a, b, c) <= 1e-10);
  }
}

TEST_CASE("Fenchel-Young inequality") {
  auto eu = ProxSetup::euclidean_ball(3.0);
  CHECK(check_fenchel_young(eu, {0.0, 0.0}, {5.0, -1.0}, 1.0));
  CHECK(check_fenchel_young(eu, {1.0, 0.0}, {1.0, 0.0}, 1.0));
  CHECK_THROWS_AS(check_fenchel_young(eu, {1.0, 0.0}, {1.0, 0.0}, 0.0), std::invalid_argument);

  auto en = ProxSetup::entropy_simplex(4);
  Rng rng(23);
  for (int t = 0; t < 1000; ++t) {
    double lambda = std::exp(4.0 * (rng.uniform() - 0.5));
    CHECK(check_fenchel_young(eu, random_normal(rng, 4, 3.0), random_normal(rng, 4, 3.0), lambda));
    CHECK(check_fenchel_young(en, random_normal(rng, 4, 3.0), random_normal(rng, 4, 3.0), lambda));
  }
}

TEST_CASE("Bregman lower bound by half the squared primal norm") {
  Rng rng(29);
  auto eu = ProxSetup::euclidean_ball(4.0);
  auto en = ProxSetup::entropy_simplex(5);
  for (int t = 0; t < 1000; ++t) {
    Vector x = sample_feasible(eu.set(), 5, rng);
    Vector y = sample_feasible(eu.set(), 5, rng);
    double p = eu.norms().primal(x - y);
    CHECK(bregman(eu, x, y) >= 0.5 * p * p - 1e-10);

    Vector u = strictly_positive_simplex(rng, 5);
    Vector w = strictly_positive_simplex(rng, 5);
    double q = en.norms().primal(u - w);
    CHECK(bregman(en, u, w) >= 0.5 * q * q - 1e-10);
  }
}

TEST_CASE("psi and its gradient agree with finite differences") {
  auto en = ProxSetup::entropy_simplex(3);
  Vector x{0.2, 0.3, 0.5};
  Vector g = en.grad_psi(x);
  for (std::size_t i = 0; i < 3; ++i) {
    std::vector<double> up = x.data(), dn = x.data();
    up[i] += 1e-6;
    dn[i] -= 1e-6;
    // psi is separable, so the partial derivative needs no simplex constraint.
    double fd = (en.psi(Vector(up)) - en.psi(Vector(dn))) / 2e-6;
    CHECK(g[i] == doctest::Approx(fd).epsilon(1e-7));
  }
}
