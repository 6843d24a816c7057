#include <doctest.h>

#include <cmath>

#include "../support/oracles.hpp"
#include "core/amenability.hpp"
#include "core/error.hpp"
#include "core/symmetric_dual.hpp"

using namespace hypalg;

namespace {

AnalysisOptions quick() {
  AnalysisOptions o;
  o.threads = 1;
  return o;
}

}  // namespace

TEST_CASE("family flags") {
  Analyzer t(preset("chebyshev-t"), quick());
  CHECK(t.flags().normalized);
  CHECK(t.flags().nevai);
  CHECK(t.flags().bounded_variation);
  CHECK(t.flags().haar_bounded);
  CHECK_FALSE(t.flags().compact_type);

  Analyzer u(preset("chebyshev-u"), quick());
  CHECK(u.flags().nevai);
  CHECK_FALSE(u.flags().haar_bounded);

  Analyzer g(preset("geometric-compact", {{"q", "1/3"}}), quick());
  CHECK(g.flags().compact_type);
  CHECK_FALSE(g.flags().nevai);

  AnalysisOptions small = quick();
  small.window = 16;
  CHECK_THROWS_AS(Analyzer(preset("chebyshev-t"), small), Error);
}

TEST_CASE("closed-form decay ratio") {
  CHECK(closed_form_ratio(0.5) == 1.0);
  CHECK(closed_form_ratio(2.0) == doctest::Approx(oracle::decay_ratio(2.0)));
  CHECK(closed_form_ratio(-2.0) == doctest::Approx(2.0 - std::sqrt(3.0)));
}

TEST_CASE("chebyshev-t and chebyshev-u classification inside the interval") {
  Analyzer t(preset("chebyshev-t"), quick());
  Analyzer u(preset("chebyshev-u"), quick());
  for (double xt : {-0.9, -0.6, -0.3, 0.0, 0.3, 0.6, 0.9}) {
    CAPTURE(xt);
    auto rt = t.analyze(t.from_tilde(xt));
    CHECK(rt.verdict == Verdict::Amenable);
    CHECK(rt.clause == "amenable:h-bounded");
    auto ru = u.analyze(u.from_tilde(xt));
    CHECK(ru.verdict == Verdict::NotAmenable);
  }
  CHECK(t.analyze(1.0).verdict == Verdict::IdentityAlwaysAmenable);
  CHECK(t.analyze(1.5).verdict == Verdict::OutsideDual);
  CHECK(t.analyze(-1.2).verdict == Verdict::OutsideDual);
}

TEST_CASE("perturbed mass point has a unique mean") {
  Analyzer a(preset("perturbed-chebyshev"), quick());
  const double x = -oracle::perturbed_mass_point(1.0);
  auto rep = a.analyze(a.support().mass_points.front().x);
  CHECK(rep.verdict == Verdict::UniqueMean);
  REQUIRE(rep.norms);
  CHECK(rep.norms->l1.status == NormStatus::Converged);
  CHECK(rep.norms->l2sq.status == NormStatus::Converged);
  CHECK(rep.norms->l2sq.partial == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(rep.norms->ratio_estimate == doctest::Approx(oracle::decay_ratio(x)).epsilon(1e-6));
  REQUIRE(rep.mean);
  CHECK(rep.mean->verification.passed);

  auto mean = a.construct_mean(a.support().mass_points.back().x);
  CHECK(mean.verification.normalization <= 1e-9);
  CHECK(mean.verification.idempotency <= 1e-8);
  CHECK(mean.verification.eigen <= 1e-8);
  CHECK_THROWS_AS(a.construct_mean(1.0), Error);
}

TEST_CASE("mean construction failures carry the right error code") {
  Analyzer t(preset("chebyshev-t"), quick());
  try {
    t.construct_mean(1.0);
    FAIL("expected NotL2");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotL2);
  }
  try {
    t.construct_mean(2.0);
    FAIL("expected OutsideDual");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::OutsideDual);
  }
}

TEST_CASE("symmetric dual points") {
  CHECK(symmetric_dual::point(4) == 0.75);
  CHECK(symmetric_dual::index_of(0.75) == 4u);
  CHECK_FALSE(symmetric_dual::index_of(0.7).has_value());
  CHECK(symmetric_dual::index_of(Rational(2, 3)) == 3u);
  CHECK_FALSE(symmetric_dual::index_of(Rational(1)).has_value());

  auto arrays = materialize<Rational>(preset("symmetric", {{"b", "1/2"}}).symmetric(), 10);
  auto chi = symmetric_dual::character(arrays, 3, 6);
  CHECK(chi == std::vector<Rational>{1, 1, 1, Rational(-1, 2), 0, 0, 0});
  Rational l2 = 0, l1 = 0;
  for (std::size_t n = 0; n <= 6; ++n) {
    l2 += chi[n] * chi[n] * arrays.c[n];
    l1 += abs(chi[n]) * arrays.c[n];
  }
  CHECK(symmetric_dual::l2_norm_sq(arrays, 3) == l2);
  CHECK(symmetric_dual::l1_norm(arrays, 3) == l1);
}

TEST_CASE("characters of a symmetric hypergroup are multiplicative") {
  auto params = preset("symmetric", {{"b", "1/2"}}).symmetric();
  auto table = ConvolutionTable<Rational>::symmetric(params, 12);
  auto arrays = table.symmetric_arrays();
  for (std::size_t k = 1; k <= 10; ++k) {
    auto chi = symmetric_dual::character(arrays, k, 12);
    for (std::size_t i = 0; i <= 12; ++i)
      for (std::size_t j = 0; j <= 12; ++j) {
        Rational s = 0;
        const auto& row = table.row(i, j);
        for (std::size_t n = 0; n < row.values.size(); ++n) s += row.values[n] * chi[row.lo + n];
        REQUIRE(s == chi[i] * chi[j]);
      }
  }
}

TEST_CASE("exact symmetric means") {
  for (const char* b : {"1", "1/2", "1/3"}) {
    CAPTURE(std::string(b));
    auto params = preset("symmetric", {{"b", b}}).symmetric();
    for (std::size_t k = 1; k <= 8; ++k) {
      auto mean = construct_symmetric_mean<Rational>(params, k);
      CHECK(mean.verification.passed);
      CHECK(mean.verification.normalization_text == "0");
      CHECK(mean.verification.idempotency_text == "0");
      CHECK(mean.verification.eigen_text == "0");
      CHECK(mean.truncation == k);
    }
  }
  auto ones = construct_symmetric_mean<Rational>(preset("symmetric").symmetric(), 4);
  CHECK(ones.l2sq == 16);
  CHECK(ones.density.at(4) == Rational(-1, 16));
}

TEST_CASE("symmetric analysis") {
  Analyzer a(preset("symmetric"), quick());
  CHECK(a.support().essential_source == "symmetric");
  auto near = a.analyze(symmetric_dual::point(5));
  CHECK(near.verdict == Verdict::UniqueMean);
  auto far = a.analyze(symmetric_dual::point(300));
  CHECK(far.verdict == Verdict::Inconclusive);
  CHECK(far.clause == "inconclusive:not-isolated");
  CHECK(a.analyze(0.7).verdict == Verdict::OutsideDual);
  CHECK(a.analyze(1.0).verdict == Verdict::IdentityAlwaysAmenable);
  CHECK_THROWS_AS(a.construct_mean(1.0), Error);
}

TEST_CASE("analyze_all keeps input order and matches analyze") {
  AnalysisOptions o = quick();
  o.threads = 3;
  Analyzer a(preset("perturbed-chebyshev"), o);
  std::vector<double> xs{0.2, -0.5, 1.5, a.support().mass_points[0].x, 0.9};
  auto reports = a.analyze_all(xs);
  REQUIRE(reports.size() == xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    CHECK(reports[i].x == xs[i]);
    CHECK(reports[i].verdict == a.analyze(xs[i]).verdict);
  }
}

TEST_CASE("corollary on a compact-type family") {
  Analyzer a(preset("geometric-compact", {{"q", "1/3"}}), quick());
  std::vector<double> xs;
  for (const auto& mp : a.support().mass_points) xs.push_back(mp.x);
  REQUIRE_FALSE(xs.empty());
  auto reports = a.analyze_all(xs);
  for (const auto& r : reports) CHECK(r.verdict == Verdict::UniqueMean);
  auto c = corollary_check(reports, a.support(), a.options().eps);
  CHECK(c.antecedent);
  CHECK(c.conclusion);
  CHECK(c.holds());
}
