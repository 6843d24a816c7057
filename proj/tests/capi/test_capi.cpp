#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <hypalg/hypalg.h>

#include <cmath>
#include <string>

namespace {

hypalg_family* make_preset(const char* name, const char* key = nullptr, const char* value = nullptr) {
  hypalg_family* f = nullptr;
  const char* keys[] = {key};
  const char* values[] = {value};
  REQUIRE(hypalg_family_preset(name, keys, values, key ? 1 : 0, &f) == HYPALG_OK);
  return f;
}

}  // namespace

TEST_CASE("version and number parsing") {
  CHECK(std::string(hypalg_version()) == "0.1.0");
  double v = 0.0;
  CHECK(hypalg_parse_number("3/4", &v) == HYPALG_OK);
  CHECK(v == 0.75);
  CHECK(hypalg_parse_number("abc", &v) == HYPALG_ERR_CONFIG);
  CHECK(std::string(hypalg_last_error()).size() > 0);
  CHECK(std::string(hypalg_last_error_kind()) == "InvalidParameter");
}

TEST_CASE("grid is generated exactly") {
  double* xs = nullptr;
  size_t n = 0;
  REQUIRE(hypalg_grid("-0.9", "0.9", "0.3", &xs, &n) == HYPALG_OK);
  REQUIRE(n == 7);
  CHECK(xs[0] == -0.9);
  CHECK(xs[3] == 0.0);
  CHECK(xs[6] == 0.9);
  hypalg_free_array(xs);
  CHECK(hypalg_grid("0", "1", "0", &xs, &n) == HYPALG_ERR_CONFIG);
}

TEST_CASE("unknown presets and bad parameters are config errors") {
  hypalg_family* f = nullptr;
  CHECK(hypalg_family_preset("nope", nullptr, nullptr, 0, &f) == HYPALG_ERR_CONFIG);
  CHECK(std::string(hypalg_last_error_kind()) == "UnknownPreset");
  const char* k[] = {"q"};
  const char* v[] = {"2"};
  CHECK(hypalg_family_preset("geometric-compact", k, v, 1, &f) == HYPALG_ERR_CONFIG);
  const char* a[] = {"1", "1/2"};
  const char* b[] = {"0", "0"};
  const char* c[] = {"1/2"};
  CHECK(hypalg_family_explicit(a, 2, b, 2, c, 1, "none", nullptr, &f) == HYPALG_ERR_CONFIG);
  REQUIRE(hypalg_family_explicit(a, 2, b, 2, c, 1, "constant", nullptr, &f) == HYPALG_OK);
  CHECK(hypalg_family_is_symmetric(f) == 0);
  hypalg_family_free(f);
}

TEST_CASE("tables, rows and axioms") {
  hypalg_family* f = make_preset("chebyshev-u");
  hypalg_table* t = nullptr;
  REQUIRE(hypalg_table_build(f, 20, HYPALG_BACKEND_RATIONAL, &t) == HYPALG_OK);
  CHECK(hypalg_table_max_level(t) == 20);
  size_t lo = 0, count = 0;
  const char* const* values = nullptr;
  REQUIRE(hypalg_table_row(t, 2, 3, &lo, &count, &values) == HYPALG_OK);
  CHECK(lo == 1);
  REQUIRE(count == 5);
  CHECK(std::string(values[0]) == "1/6");
  CHECK(std::string(values[1]) == "0");
  CHECK(std::string(values[2]) == "1/3");
  CHECK(std::string(values[4]) == "1/2");
  CHECK(hypalg_table_row(t, 2, 21, &lo, &count, &values) == HYPALG_ERR_NUMERICAL);

  hypalg_axiom_report rep;
  REQUIRE(hypalg_table_verify(t, 0.0, 10, &rep) == HYPALG_OK);
  CHECK(rep.passed == 1);
  CHECK(std::string(rep.failure) == "none");

  const char* const* haar = nullptr;
  REQUIRE(hypalg_table_haar(t, 5, &haar) == HYPALG_OK);
  CHECK(std::string(haar[5]) == "36");
  REQUIRE(hypalg_family_haar(f, 5, HYPALG_BACKEND_FLOAT, &haar) == HYPALG_OK);
  CHECK(std::string(haar[4]) == "25");
  hypalg_table_free(t);
  hypalg_family_free(f);
}

TEST_CASE("axiom failure witness through the C API") {
  hypalg_family* f = make_preset("geometric-compact", "q", "1/2");
  hypalg_table* t = nullptr;
  REQUIRE(hypalg_table_build(f, 10, HYPALG_BACKEND_RATIONAL, &t) == HYPALG_OK);
  hypalg_axiom_report rep;
  REQUIRE(hypalg_table_verify(t, 0.0, 10, &rep) == HYPALG_OK);
  CHECK(rep.passed == 0);
  CHECK(rep.j == 2);
  CHECK(rep.k == 2);
  CHECK(rep.n == 2);
  CHECK(std::string(rep.value) == "-3/16");
  hypalg_table_free(t);
  hypalg_family_free(f);
}

TEST_CASE("analysis and reports") {
  hypalg_family* f = make_preset("perturbed-chebyshev");
  hypalg_options o;
  hypalg_options_init(&o);
  CHECK(o.window == 512);
  CHECK(o.truncation_count == 2);
  hypalg_analysis* an = nullptr;
  REQUIRE(hypalg_analysis_create(f, &o, &an) == HYPALG_OK);
  hypalg_support_info s;
  hypalg_analysis_support(an, &s);
  REQUIRE(s.mass_point_count == 2);
  CHECK(std::string(s.essential_source) == "nevai");
  hypalg_mass_point mp;
  REQUIRE(hypalg_analysis_mass_point(an, 1, &mp) == HYPALG_OK);
  CHECK(mp.x == doctest::Approx(2.0 / std::sqrt(3.0)).epsilon(1e-10));
  CHECK(mp.stable == 1);

  const double xs[] = {0.0, mp.x, 1.0, 3.0};
  hypalg_reports* reps = nullptr;
  REQUIRE(hypalg_analysis_run(an, xs, 4, &reps) == HYPALG_OK);
  REQUIRE(hypalg_reports_count(reps) == 4);
  hypalg_report r;
  REQUIRE(hypalg_reports_get(reps, 1, &r) == HYPALG_OK);
  CHECK(std::string(r.verdict) == "UNIQUE_MEAN");
  CHECK(r.has_norms == 1);
  CHECK(std::string(r.l2sq_status) == "converged");
  CHECK(r.has_mean == 1);
  REQUIRE(hypalg_reports_get(reps, 3, &r) == HYPALG_OK);
  CHECK(std::string(r.verdict) == "OUTSIDE_DUAL");
  CHECK(hypalg_reports_get(reps, 4, &r) == HYPALG_ERR_CONFIG);
  hypalg_corollary c;
  hypalg_reports_corollary(reps, an, &c);
  CHECK(c.holds == 1);
  hypalg_reports_free(reps);

  hypalg_mean* m = nullptr;
  REQUIRE(hypalg_mean_create(an, mp.x, &m) == HYPALG_OK);
  hypalg_mean_info info;
  hypalg_mean_info_get(m, &info);
  CHECK(info.passed == 1);
  CHECK(info.normalization_residual <= 1e-9);
  const char *mv = nullptr, *hv = nullptr;
  REQUIRE(hypalg_mean_entry(m, 0, &mv, &hv) == HYPALG_OK);
  CHECK(std::string(hv) == "1");
  hypalg_mean_free(m);
  CHECK(hypalg_mean_create(an, 1.0, &m) == HYPALG_ERR_CONSTRUCTION);
  CHECK(std::string(hypalg_last_error_kind()) == "NotL2");
  hypalg_analysis_free(an);
  hypalg_family_free(f);
}

TEST_CASE("exact symmetric mean") {
  const char* b[] = {"1"};
  hypalg_family* f = nullptr;
  REQUIRE(hypalg_family_symmetric(b, 1, "constant", nullptr, &f) == HYPALG_OK);
  CHECK(hypalg_family_is_symmetric(f) == 1);
  hypalg_mean* m = nullptr;
  REQUIRE(hypalg_mean_create_exact(f, "3/4", &m) == HYPALG_OK);
  hypalg_mean_info info;
  hypalg_mean_info_get(m, &info);
  CHECK(info.truncation == 4);
  CHECK(std::string(info.l2sq) == "16");
  CHECK(std::string(info.idempotency_text) == "0");
  const char *mv = nullptr, *hv = nullptr;
  REQUIRE(hypalg_mean_entry(m, 4, &mv, &hv) == HYPALG_OK);
  CHECK(std::string(mv) == "-1/16");
  CHECK(std::string(hv) == "8");
  CHECK(hypalg_mean_entry(m, 5, &mv, &hv) == HYPALG_ERR_CONFIG);
  hypalg_mean_free(m);
  CHECK(hypalg_mean_create_exact(f, "1", &m) == HYPALG_ERR_CONSTRUCTION);
  CHECK(hypalg_mean_create_exact(f, "7/10", &m) == HYPALG_ERR_CONSTRUCTION);
  CHECK(std::string(hypalg_last_error_kind()) == "OutsideDual");
  hypalg_family_free(f);

  hypalg_family* t = make_preset("chebyshev-t");
  CHECK(hypalg_mean_create_exact(t, "1/2", &m) == HYPALG_ERR_CONFIG);
  hypalg_family_free(t);
}
