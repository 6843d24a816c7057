#include <doctest.h>

#include <cmath>
#include <random>

#include "core/algebra.hpp"
#include "core/error.hpp"

using namespace hypalg;

namespace {

template <class T>
SequenceMeasure<T> density(std::vector<T> values) {
  SequenceMeasure<T> m;
  m.density = std::move(values);
  return m;
}

SequenceMeasure<double> random_density(std::mt19937_64& rng, std::size_t support) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(support + 1);
  for (auto& x : v) x = u(rng);
  return density(v);
}

}  // namespace

TEST_CASE("Haar weights of the Chebyshev families") {
  auto t = ConvolutionTable<Rational>::polynomial(preset("chebyshev-t").polynomial(), 30);
  auto h = haar_from_table(t, 30);
  CHECK(h[0] == 1);
  for (std::size_t n = 1; n <= 30; ++n) CHECK(h[n] == 2);

  const Family u_family = preset("chebyshev-u");
  const auto& u = u_family.polynomial();
  auto hu = haar_from_table(ConvolutionTable<Rational>::polynomial(u, 30), 30);
  auto hp = haar_from_coefficients<Rational>(u, 30);
  for (std::size_t n = 0; n <= 30; ++n) {
    CHECK(hu[n] == Rational((n + 1) * (n + 1)));
    CHECK(hp[n] == hu[n]);
  }
}

TEST_CASE("symmetric Haar weights are c_n") {
  auto params = preset("symmetric", {{"b", "1/2"}}).symmetric();
  auto h = haar_from_table(ConvolutionTable<Rational>::symmetric(params, 20), 20);
  auto c = materialize<Rational>(params, 20).c;
  auto hs = haar_symmetric<Rational>(params, 20);
  for (std::size_t n = 0; n <= 20; ++n) {
    CHECK(h[n] == c[n]);
    CHECK(hs[n] == c[n]);
  }
}

TEST_CASE("convolution is associative and commutative") {
  for (const char* name : {"chebyshev-t", "chebyshev-u"}) {
    CAPTURE(std::string(name));
    auto t = ConvolutionTable<double>::polynomial(preset(name).polynomial(), 40);
    auto h = haar_from_table(t, 40);
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 5; ++trial) {
      auto f = random_density(rng, 6), g = random_density(rng, 5), k = random_density(rng, 7);
      auto left = convolve(convolve(f, g, t, h), k, t, h);
      auto right = convolve(f, convolve(g, k, t, h), t, h);
      auto fg = convolve(f, g, t, h), gf = convolve(g, f, t, h);
      double scale = 1.0;
      for (std::size_t n = 0; n < left.size(); ++n) scale = std::max(scale, std::fabs(left.at(n)));
      for (std::size_t n = 0; n < std::max(left.size(), right.size()); ++n)
        REQUIRE(std::fabs(left.at(n) - right.at(n)) <= 1e-11 * scale);
      for (std::size_t n = 0; n < fg.size(); ++n) REQUIRE(fg.at(n) == gf.at(n));
    }
  }
}

TEST_CASE("point masses convolve by the linearization coefficients") {
  auto t = ConvolutionTable<Rational>::polynomial(preset("chebyshev-u").polynomial(), 10);
  auto h = haar_from_table(t, 10);
  auto e3 = SequenceMeasure<Rational>::point(3, h), e5 = SequenceMeasure<Rational>::point(5, h);
  auto prod = convolve(e3, e5, t, h);
  for (std::size_t n = 0; n <= 8; ++n) CHECK(prod.at(n) * h[n] == t.at(3, 5, n));
}

TEST_CASE("Haar measure is translation invariant") {
  for (const char* name : {"chebyshev-t", "chebyshev-u"}) {
    CAPTURE(std::string(name));
    auto t = ConvolutionTable<Rational>::polynomial(preset(name).polynomial(), 30);
    auto h = haar_from_table(t, 30);
    auto f = density<Rational>({1, -2, Rational(1, 3), 0, 5});
    auto one = density<Rational>(std::vector<Rational>(31, 1));
    const Rational base = pairing(f, one, h);
    for (std::size_t x = 0; x <= 10; ++x) {
      auto tf = translate(x, f, t);
      CHECK(pairing(tf, one, h) == base);
    }
  }
}

TEST_CASE("identity and involution structure") {
  auto t = ConvolutionTable<Rational>::polynomial(preset("chebyshev-u").polynomial(), 15);
  auto h = haar_from_table(t, 15);
  auto delta0 = SequenceMeasure<Rational>::point(0, h);
  auto f = density<Rational>({2, 0, -1, Rational(1, 7)});
  auto g = convolve(delta0, f, t, h);
  for (std::size_t n = 0; n < 4; ++n) CHECK(g.at(n) == f.at(n));
  CHECK(l1_norm(f, h) == 2 + 9 + Rational(16, 7));
}

TEST_CASE("verify_axioms passes on valid families in both backends") {
  for (const char* name : {"chebyshev-t", "chebyshev-u"}) {
    CAPTURE(std::string(name));
    auto exact = verify_axioms(ConvolutionTable<Rational>::polynomial(preset(name).polynomial(), 30), 0.0, 10);
    CHECK(exact.passed);
    CHECK(exact.pairs_checked == 31 * 31);
    auto approx = verify_axioms(ConvolutionTable<double>::polynomial(preset(name).polynomial(), 60), 1e-12);
    CHECK(approx.passed);
  }
  auto sym = verify_axioms(ConvolutionTable<Rational>::symmetric(preset("symmetric").symmetric(), 40), 0.0);
  CHECK(sym.passed);
  auto geo = verify_axioms(
      ConvolutionTable<Rational>::polynomial(preset("geometric-compact", {{"q", "1/3"}}).polynomial(), 40), 0.0);
  CHECK(geo.passed);
}
