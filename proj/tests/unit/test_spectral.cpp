#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "../support/oracles.hpp"
#include "core/algebra.hpp"
#include "core/error.hpp"
#include "core/spectral.hpp"
#include "core/tridiagonal.hpp"

using namespace hypalg;

TEST_CASE("QL eigenvalues agree with Sturm bisection on random matrices") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (std::size_t n : {1u, 2u, 5u, 17u, 64u, 150u}) {
    std::vector<double> d(n), e(n > 0 ? n - 1 : 0);
    for (auto& v : d) v = u(rng);
    for (auto& v : e) v = u(rng);
    auto spec = symmetric_tridiagonal_eigen(d, e);
    auto ref = oracle::eigenvalues(d, e);
    REQUIRE(spec.eigenvalues.size() == n);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(spec.eigenvalues[i] == doctest::Approx(ref[i]).epsilon(1e-10).scale(1.0));
      total += spec.first_components_sq[i];
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("QL handles split and diagonal matrices") {
  std::vector<double> d{3.0, -1.0, 2.0, 0.5};
  std::vector<double> e{0.0, 0.0, 0.0};
  auto spec = symmetric_tridiagonal_eigen(d, e);
  CHECK(spec.eigenvalues == std::vector<double>{-1.0, 0.5, 2.0, 3.0});
  CHECK(spec.first_components_sq[3] == doctest::Approx(1.0));
}

TEST_CASE("orthonormal system of chebyshev-t") {
  auto sys = orthonormalize(preset("chebyshev-t").polynomial(), 20);
  CHECK(sys.lambda[1] == doctest::Approx(1.0 / std::sqrt(2.0)));
  for (std::size_t n = 2; n <= 20; ++n) CHECK(sys.lambda[n] == doctest::Approx(0.5));
  for (std::size_t n = 0; n <= 20; ++n) CHECK(sys.beta[n] == 0.0);
}

TEST_CASE("orthonormal values equal sqrt(h) p_n") {
  const Family u_family = preset("chebyshev-u");
  const auto& u = u_family.polynomial();
  auto sys = orthonormalize(u, 30);
  auto q = evaluate_orthonormal(sys, 0.3, 30);
  const double theta = std::acos(0.3);
  for (std::size_t n = 0; n <= 30; ++n) {
    const double p = std::sin((n + 1) * theta) / ((n + 1) * std::sin(theta));
    CHECK(q[n] == doctest::Approx((n + 1) * p).epsilon(1e-12));
  }
}

TEST_CASE("three-point quadrature of chebyshev-t") {
  auto sys = orthonormalize(preset("chebyshev-t").polynomial(), 4);
  auto mu = quadrature(sys, 3);
  REQUIRE(mu.nodes.size() == 3);
  CHECK(mu.nodes[0] == doctest::Approx(-std::sqrt(3.0) / 2));
  CHECK(mu.nodes[1] == doctest::Approx(0.0).scale(1.0));
  CHECK(mu.nodes[2] == doctest::Approx(std::sqrt(3.0) / 2));
  for (double w : mu.weights) CHECK(w == doctest::Approx(1.0 / 3));
}

TEST_CASE("chebyshev-u quadrature nodes are cos(k pi / (N+1))") {
  auto sys = orthonormalize(preset("chebyshev-u").polynomial(), 12);
  auto mu = quadrature(sys, 10);
  for (std::size_t k = 1; k <= 10; ++k) {
    const double node = std::cos((11 - k) * std::numbers::pi / 11);
    const double weight = 2.0 / 11 * std::pow(std::sin((11 - k) * std::numbers::pi / 11), 2);
    CHECK(mu.nodes[k - 1] == doctest::Approx(node).scale(1.0));
    CHECK(mu.weights[k - 1] == doctest::Approx(weight));
  }
}

TEST_CASE("Fourier transform and Plancherel on a point mass") {
  const Family t_family = preset("chebyshev-t");
  const auto& t = t_family.polynomial();
  auto cf = materialize<double>(t, 80);
  auto h = haar_from_coefficients<double>(t, 80);
  auto f = SequenceMeasure<double>::indicator(1);
  CHECK(fourier(f, cf, h, 0.7) == doctest::Approx(1.4));
  auto f2 = SequenceMeasure<double>::indicator(2);
  CHECK(fourier(f2, cf, h, 0.5) == doctest::Approx(-1.0));
  auto mu = quadrature(orthonormalize(cf, 70), 64);
  auto res = plancherel_check(f, mu, cf, h);
  CHECK(res.lhs == doctest::Approx(2.0));
  CHECK(res.rhs == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("Plancherel on random densities") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (const char* name : {"chebyshev-t", "chebyshev-u"}) {
    const Family r_family = preset(name);
  const auto& r = r_family.polynomial();
    auto cf = materialize<double>(r, 80);
    auto h = haar_from_coefficients<double>(r, 80);
    auto mu = quadrature(orthonormalize(cf, 70), 64);
    for (int trial = 0; trial < 10; ++trial) {
      SequenceMeasure<double> f;
      f.density.resize(1 + trial * 2);
      for (auto& v : f.density) v = u(rng);
      auto res = plancherel_check(f, mu, cf, h);
      CHECK(std::fabs(res.lhs - res.rhs) <= 1e-10 * res.lhs);
    }
    SequenceMeasure<double> big;
    big.density.assign(65, 1.0);
    CHECK_THROWS_AS(plancherel_check(big, mu, cf, h), Error);
  }
}

TEST_CASE("support of the perturbed Jacobi matrix") {
  auto sys = orthonormalize(preset("perturbed-chebyshev").polynomial(), 400);
  auto est = estimate_support(sys, {200, 400}, Interval{-1.0, 1.0}, "nevai");
  REQUIRE(est.mass_points.size() == 2);
  const double x = oracle::perturbed_mass_point(1.0);
  CHECK(est.mass_points[0].x == doctest::Approx(-x).epsilon(1e-12));
  CHECK(est.mass_points[1].x == doctest::Approx(x).epsilon(1e-12));
  for (const auto& mp : est.mass_points) {
    CHECK(mp.stable);
    CHECK(mp.weight == doctest::Approx(1.0 / 3).epsilon(1e-9));
  }
  CHECK(is_isolated(x, est, 1e-5));
  CHECK_FALSE(is_isolated(0.5, est, 1e-5));

  auto plain = orthonormalize(preset("chebyshev-t").polynomial(), 400);
  auto none = estimate_support(plain, {200, 400}, Interval{-1.0, 1.0}, "nevai");
  CHECK(none.mass_points.empty());
  CHECK(max_interior_gap(none.eigenvalues[1], Interval{-1.0, 1.0}) < 0.02);
}
