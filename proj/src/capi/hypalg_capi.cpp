#include "hypalg/hypalg.h"

#include <cstdlib>
#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <new>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "core/algebra.hpp"
#include "core/amenability.hpp"
#include "core/coefficients.hpp"
#include "core/error.hpp"
#include "core/symmetric_dual.hpp"
#include "core/table.hpp"

using namespace hypalg;

namespace {

thread_local std::string g_last_error;
thread_local std::string g_last_kind;

hypalg_status status_for(Errc code) {
  switch (code) {
    case Errc::InvalidParameter:
    case Errc::UnknownPreset:
    case Errc::WindowTooSmall:
      return HYPALG_ERR_CONFIG;
    case Errc::TableExhausted:
    case Errc::DegenerateTable:
    case Errc::EigensolverFailure:
    case Errc::OrderTooSmall:
      return HYPALG_ERR_NUMERICAL;
    case Errc::NotL2:
    case Errc::OutsideDual:
      return HYPALG_ERR_CONSTRUCTION;
  }
  return HYPALG_ERR_INTERNAL;
}

template <class F>
hypalg_status guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    g_last_kind.clear();
    return HYPALG_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    g_last_kind = errc_name(e.code());
    return status_for(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    g_last_kind = "Internal";
    return HYPALG_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    g_last_kind = "Internal";
    return HYPALG_ERR_INTERNAL;
  }
}

hypalg_status invalid(const std::string& what) {
  g_last_error = std::string("InvalidParameter: ") + what;
  g_last_kind = "InvalidParameter";
  return HYPALG_ERR_CONFIG;
}

std::string text_of(double v) { return format_g17(v); }
std::string text_of(const Rational& v) { return to_text(v); }

std::vector<Rational> parse_list(const char* const* items, std::size_t n) {
  std::vector<Rational> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (items[i] == nullptr) throw Error(Errc::InvalidParameter, "null list entry");
    out.push_back(parse_rational(items[i]));
  }
  return out;
}

TailSpec parse_tail(const char* rule, const char* ratio) {
  TailSpec tail;
  const std::string r = rule ? rule : "";
  if (r == "constant") {
    tail.rule = TailRule::Constant;
  } else if (r == "geometric") {
    tail.rule = TailRule::Geometric;
    if (ratio == nullptr) throw Error(Errc::InvalidParameter, "geometric tail needs a ratio");
    tail.ratio = parse_rational(ratio);
  } else if (r.empty()) {
    tail.rule = TailRule::None;
  } else {
    throw Error(Errc::InvalidParameter, "unknown tail rule '" + r + "' (constant or geometric)");
  }
  return tail;
}

// Text storage with stable addresses.
struct Strings {
  std::deque<std::string> items;
  const char* keep(std::string s) {
    items.push_back(std::move(s));
    return items.back().c_str();
  }
};

struct TextArray {
  std::vector<std::string> storage;
  std::vector<const char*> pointers;
  template <class T>
  void assign(const std::vector<T>& values) {
    storage.clear();
    pointers.clear();
    for (const auto& v : values) storage.push_back(text_of(v));
    for (const auto& s : storage) pointers.push_back(s.c_str());
  }
};

}  // namespace

struct hypalg_family {
  Family family;
  TextArray haar_text;
};

struct hypalg_table {
  std::variant<ConvolutionTable<double>, ConvolutionTable<Rational>> table;
  std::mutex mutex;
  std::map<std::pair<std::size_t, std::size_t>, std::pair<std::size_t, TextArray>> rows;
  TextArray haar_text;
  Strings report_strings;
};

struct hypalg_analysis {
  Analyzer analyzer;
  std::vector<double> character;
};

struct hypalg_reports {
  std::vector<AmenabilityReport> reports;
};

struct hypalg_mean {
  std::string x, l1, l2sq;
  std::size_t truncation = 0;
  double tail_bound = 0.0;
  MeanVerification verification;
  std::vector<std::string> m, h;
};

namespace {

template <class T>
hypalg_mean* wrap_mean(const AlphaMean<T>& a) {
  auto* m = new hypalg_mean;
  m->x = a.x_text;
  m->l1 = text_of(a.l1);
  m->l2sq = text_of(a.l2sq);
  m->truncation = a.truncation;
  m->tail_bound = a.tail_bound;
  m->verification = a.verification;
  for (std::size_t n = 0; n <= a.truncation; ++n) {
    m->m.push_back(text_of(a.density.at(n)));
    m->h.push_back(text_of(a.haar[n]));
  }
  return m;
}

}  // namespace

extern "C" {

const char* hypalg_version(void) { return "0.1.0"; }
const char* hypalg_last_error(void) { return g_last_error.c_str(); }
const char* hypalg_last_error_kind(void) { return g_last_kind.c_str(); }

hypalg_status hypalg_parse_number(const char* text, double* out) {
  if (text == nullptr || out == nullptr) return invalid("null argument");
  return guarded([&] { *out = to_double(parse_rational(text)); });
}

hypalg_status hypalg_grid(const char* lo, const char* hi, const char* step, double** values, size_t* count) {
  if (lo == nullptr || hi == nullptr || step == nullptr || values == nullptr || count == nullptr)
    return invalid("null argument");
  return guarded([&] {
    const Rational a = parse_rational(lo), b = parse_rational(hi), h = parse_rational(step);
    if (sgn(h) <= 0) throw Error(Errc::InvalidParameter, "grid step must be positive");
    if (b < a) throw Error(Errc::InvalidParameter, "grid upper end below lower end");
    Rational span = (b - a) / h;
    const mpz_class steps = span.get_num() / span.get_den();
    if (steps > 1000000) throw Error(Errc::InvalidParameter, "grid has more than 10^6 points");
    const std::size_t n = steps.get_ui() + 1;
    auto* data = static_cast<double*>(std::malloc(n * sizeof(double)));
    if (data == nullptr) throw std::bad_alloc();
    for (std::size_t i = 0; i < n; ++i) {
      Rational x = a + h * static_cast<unsigned long>(i);
      data[i] = to_double(x);
    }
    *values = data;
    *count = n;
  });
}

void hypalg_free_array(double* values) { std::free(values); }

hypalg_status hypalg_family_preset(const char* name, const char* const* keys,
                                   const char* const* values, size_t count, hypalg_family** out) {
  if (name == nullptr || out == nullptr) return invalid("null argument");
  return guarded([&] {
    ParamMap params;
    for (std::size_t i = 0; i < count; ++i) {
      if (keys[i] == nullptr || values[i] == nullptr) throw Error(Errc::InvalidParameter, "null parameter");
      params[keys[i]] = values[i];
    }
    *out = new hypalg_family{preset(name, params), {}};
  });
}

hypalg_status hypalg_family_explicit(const char* const* a, size_t na, const char* const* b, size_t nb,
                                     const char* const* c, size_t nc, const char* tail_rule,
                                     const char* tail_ratio, hypalg_family** out) {
  if (out == nullptr) return invalid("null argument");
  return guarded([&] {
    *out = new hypalg_family{explicit_family(parse_list(a, na), parse_list(b, nb), parse_list(c, nc),
                                             parse_tail(tail_rule, tail_ratio)),
                             {}};
  });
}

hypalg_status hypalg_family_symmetric(const char* const* b, size_t nb, const char* tail_rule,
                                      const char* tail_ratio, hypalg_family** out) {
  if (out == nullptr) return invalid("null argument");
  return guarded([&] {
    *out = new hypalg_family{symmetric_family(parse_list(b, nb), parse_tail(tail_rule, tail_ratio)), {}};
  });
}

void hypalg_family_free(hypalg_family* family) { delete family; }

const char* hypalg_family_name(const hypalg_family* family) { return family->family.name().c_str(); }

int hypalg_family_is_symmetric(const hypalg_family* family) { return family->family.is_symmetric() ? 1 : 0; }

hypalg_status hypalg_family_haar(hypalg_family* family, size_t n_max, hypalg_backend backend,
                                 const char* const** values) {
  if (family == nullptr || values == nullptr) return invalid("null argument");
  return guarded([&] {
    const Family& f = family->family;
    if (backend == HYPALG_BACKEND_RATIONAL) {
      auto h = f.is_symmetric() ? haar_symmetric<Rational>(f.symmetric(), n_max)
                                : haar_from_coefficients<Rational>(f.polynomial(), n_max);
      family->haar_text.assign(h.h);
    } else {
      auto h = f.is_symmetric() ? haar_symmetric<double>(f.symmetric(), n_max)
                                : haar_from_coefficients<double>(f.polynomial(), n_max);
      family->haar_text.assign(h.h);
    }
    *values = family->haar_text.pointers.data();
  });
}

hypalg_status hypalg_table_build(const hypalg_family* family, size_t max_level, hypalg_backend backend,
                                 hypalg_table** out) {
  if (family == nullptr || out == nullptr) return invalid("null argument");
  return guarded([&] {
    const Family& f = family->family;
    auto make = [&](auto tag) {
      using T = decltype(tag);
      return f.is_symmetric() ? ConvolutionTable<T>::symmetric(f.symmetric(), max_level)
                              : ConvolutionTable<T>::polynomial(f.polynomial(), max_level);
    };
    if (backend == HYPALG_BACKEND_RATIONAL) *out = new hypalg_table{make(Rational{}), {}, {}, {}, {}};
    else *out = new hypalg_table{make(double{}), {}, {}, {}, {}};
  });
}

void hypalg_table_free(hypalg_table* table) { delete table; }

size_t hypalg_table_max_level(const hypalg_table* table) {
  return std::visit([](const auto& t) { return t.max_level(); }, table->table);
}

hypalg_status hypalg_table_verify(hypalg_table* table, double tol, size_t elementwise_level,
                                  hypalg_axiom_report* out) {
  if (table == nullptr || out == nullptr) return invalid("null argument");
  return guarded([&] {
    AxiomReport r = std::visit(
        [&](const auto& t) {
          using T = std::decay_t<decltype(t)>;
          return verify_axioms(t, std::is_same_v<T, ConvolutionTable<Rational>> ? 0.0 : tol,
                               elementwise_level);
        },
        table->table);
    out->passed = r.passed ? 1 : 0;
    out->level = r.level;
    out->pairs_checked = r.pairs_checked;
    out->commutativity_elementwise_level = r.commutativity_elementwise_level;
    out->failure = axiom_failure_name(r.failure);
    out->j = r.j;
    out->k = r.k;
    out->n = r.n;
    std::lock_guard<std::mutex> lock(table->mutex);
    out->value = table->report_strings.keep(r.value);
    out->message = table->report_strings.keep(r.message);
  });
}

hypalg_status hypalg_table_row(hypalg_table* table, size_t j, size_t k, size_t* lo, size_t* count,
                               const char* const** values) {
  if (table == nullptr || lo == nullptr || count == nullptr || values == nullptr)
    return invalid("null argument");
  return guarded([&] {
    std::lock_guard<std::mutex> lock(table->mutex);
    auto key = std::make_pair(std::min(j, k), std::max(j, k));
    auto it = table->rows.find(key);
    if (it == table->rows.end()) {
      std::pair<std::size_t, TextArray> entry;
      std::visit(
          [&](const auto& t) {
            const auto& row = t.row(j, k);
            entry.first = row.lo;
            entry.second.assign(row.values);
          },
          table->table);
      it = table->rows.emplace(key, std::move(entry)).first;
    }
    *lo = it->second.first;
    *count = it->second.second.pointers.size();
    *values = it->second.second.pointers.data();
  });
}

hypalg_status hypalg_table_haar(hypalg_table* table, size_t n_max, const char* const** values) {
  if (table == nullptr || values == nullptr) return invalid("null argument");
  return guarded([&] {
    std::lock_guard<std::mutex> lock(table->mutex);
    std::visit([&](const auto& t) { table->haar_text.assign(haar_from_table(t, n_max).h); },
               table->table);
    *values = table->haar_text.pointers.data();
  });
}

void hypalg_options_init(hypalg_options* options) {
  const AnalysisOptions d;
  options->tol = d.tol;
  options->ctol = d.ctol;
  options->eps = d.eps;
  options->sep = d.sep;
  options->match_tol = d.match_tol;
  options->margin = d.margin;
  options->growth_bound = d.growth_bound;
  options->window = d.window;
  options->max_level = d.max_level;
  for (std::size_t i = 0; i < HYPALG_MAX_TRUNCATIONS; ++i) options->truncations[i] = 0;
  options->truncation_count = d.truncations.size();
  for (std::size_t i = 0; i < d.truncations.size(); ++i) options->truncations[i] = d.truncations[i];
  options->threads = d.threads;
}

hypalg_status hypalg_analysis_create(const hypalg_family* family, const hypalg_options* options,
                                     hypalg_analysis** out) {
  if (family == nullptr || out == nullptr) return invalid("null argument");
  hypalg_options o;
  if (options) o = *options;
  else hypalg_options_init(&o);
  if (o.truncation_count > HYPALG_MAX_TRUNCATIONS) return invalid("too many truncations");
  for (double v : {o.tol, o.ctol, o.eps, o.sep, o.match_tol, o.margin, o.growth_bound})
    if (!(v > 0.0)) return invalid("tolerances must be positive");
  return guarded([&] {
    AnalysisOptions a;
    a.tol = o.tol;
    a.ctol = o.ctol;
    a.eps = o.eps;
    a.sep = o.sep;
    a.match_tol = o.match_tol;
    a.margin = o.margin;
    a.growth_bound = o.growth_bound;
    a.window = o.window;
    a.max_level = o.max_level;
    a.truncations.assign(o.truncations, o.truncations + o.truncation_count);
    a.threads = o.threads;
    *out = new hypalg_analysis{Analyzer(family->family, a), {}};
  });
}

void hypalg_analysis_free(hypalg_analysis* analysis) { delete analysis; }

void hypalg_analysis_flags(const hypalg_analysis* analysis, hypalg_class_flags* out) {
  const ClassFlags& f = analysis->analyzer.flags();
  out->symmetric = f.symmetric;
  out->normalized = f.normalized;
  out->compact_type = f.compact_type;
  out->nevai = f.nevai;
  out->bounded_variation = f.bounded_variation;
  out->haar_bounded = f.haar_bounded;
  out->compact_source = f.compact_source.c_str();
  out->window = f.window;
  out->lambda_limit = f.lambda_limit;
  out->beta_limit = f.beta_limit;
  out->evidence_count = f.evidence.size();
}

hypalg_status hypalg_analysis_flag_evidence(const hypalg_analysis* analysis, size_t i, const char** key,
                                            const char** value) {
  const auto& ev = analysis->analyzer.flags().evidence;
  if (i >= ev.size()) return invalid("evidence index out of range");
  *key = ev[i].key.c_str();
  *value = ev[i].value.c_str();
  return HYPALG_OK;
}

void hypalg_analysis_support(const hypalg_analysis* analysis, hypalg_support_info* out) {
  const SupportEstimate& s = analysis->analyzer.support();
  out->essential_lo = s.essential.lo;
  out->essential_hi = s.essential.hi;
  out->essential_source = s.essential_source.c_str();
  out->mass_point_count = s.mass_points.size();
  out->truncation_count = s.resolution.size();
}

hypalg_status hypalg_analysis_mass_point(const hypalg_analysis* analysis, size_t i, hypalg_mass_point* out) {
  const auto& mps = analysis->analyzer.support().mass_points;
  if (i >= mps.size()) return invalid("mass point index out of range");
  out->x = mps[i].x;
  out->weight = mps[i].weight;
  out->stable = mps[i].stable;
  out->drift = mps[i].drift;
  return HYPALG_OK;
}

hypalg_status hypalg_analysis_eigenvalues(const hypalg_analysis* analysis, size_t t, size_t* truncation,
                                          const double** values, size_t* count) {
  const SupportEstimate& s = analysis->analyzer.support();
  if (t >= s.resolution.size()) return invalid("truncation index out of range");
  *truncation = s.resolution[t];
  *values = s.eigenvalues[t].data();
  *count = s.eigenvalues[t].size();
  return HYPALG_OK;
}

double hypalg_analysis_to_tilde(const hypalg_analysis* analysis, double x) {
  return analysis->analyzer.to_tilde(x);
}

double hypalg_analysis_from_tilde(const hypalg_analysis* analysis, double x_tilde) {
  return analysis->analyzer.from_tilde(x_tilde);
}

hypalg_status hypalg_analysis_character(hypalg_analysis* analysis, double x, const double** values,
                                        size_t* count) {
  if (analysis == nullptr || values == nullptr || count == nullptr) return invalid("null argument");
  return guarded([&] {
    analysis->character = analysis->analyzer.character(x).values;
    *values = analysis->character.data();
    *count = analysis->character.size();
  });
}

hypalg_status hypalg_analysis_run(const hypalg_analysis* analysis, const double* xs, size_t count,
                                  hypalg_reports** out) {
  if (analysis == nullptr || out == nullptr || (xs == nullptr && count > 0)) return invalid("null argument");
  return guarded([&] {
    std::vector<double> points(xs, xs + count);
    *out = new hypalg_reports{analysis->analyzer.analyze_all(points)};
  });
}

void hypalg_reports_free(hypalg_reports* reports) { delete reports; }

size_t hypalg_reports_count(const hypalg_reports* reports) { return reports->reports.size(); }

hypalg_status hypalg_reports_get(const hypalg_reports* reports, size_t i, hypalg_report* out) {
  if (i >= reports->reports.size()) return invalid("report index out of range");
  const AmenabilityReport& r = reports->reports[i];
  *out = hypalg_report{};
  out->x = r.x;
  out->x_tilde = r.x_tilde;
  out->verdict = verdict_name(r.verdict);
  out->clause = r.clause.c_str();
  out->has_norms = r.norms.has_value();
  out->l1_status = out->l2sq_status = "";
  if (r.norms) {
    out->l1 = r.norms->l1.partial;
    out->l2sq = r.norms->l2sq.partial;
    out->l1_status = norm_status_name(r.norms->l1.status);
    out->l2sq_status = norm_status_name(r.norms->l2sq.status);
    out->ratio_estimate = r.norms->ratio_estimate;
    out->closed_form_ratio = r.norms->closed_form_ratio;
    out->growth = r.norms->growth;
  }
  out->isolated = r.isolated;
  out->method = character_method_name(r.method);
  out->has_mean = r.mean.has_value();
  if (r.mean) {
    out->mean_truncation = r.mean->truncation;
    out->mean_normalization_residual = r.mean->verification.normalization;
    out->mean_idempotency_residual = r.mean->verification.idempotency;
    out->mean_eigen_residual = r.mean->verification.eigen;
  }
  out->evidence_count = r.evidence.size();
  return HYPALG_OK;
}

hypalg_status hypalg_reports_evidence(const hypalg_reports* reports, size_t i, size_t e, const char** key,
                                      const char** value) {
  if (i >= reports->reports.size() || e >= reports->reports[i].evidence.size())
    return invalid("evidence index out of range");
  *key = reports->reports[i].evidence[e].key.c_str();
  *value = reports->reports[i].evidence[e].value.c_str();
  return HYPALG_OK;
}

void hypalg_reports_corollary(const hypalg_reports* reports, const hypalg_analysis* analysis,
                              hypalg_corollary* out) {
  CorollaryResult c = corollary_check(reports->reports, analysis->analyzer.support(),
                                      analysis->analyzer.options().eps);
  out->antecedent = c.antecedent;
  out->conclusion = c.conclusion;
  out->holds = c.holds();
  out->sampled = c.sampled;
}


hypalg_status hypalg_mean_create(const hypalg_analysis* analysis, double x, hypalg_mean** out) {
  if (analysis == nullptr || out == nullptr) return invalid("null argument");
  return guarded([&] { *out = wrap_mean(analysis->analyzer.construct_mean(x)); });
}

hypalg_status hypalg_mean_create_exact(const hypalg_family* family, const char* x, hypalg_mean** out) {
  if (family == nullptr || x == nullptr || out == nullptr) return invalid("null argument");
  return guarded([&] {
    if (!family->family.is_symmetric())
      throw Error(Errc::InvalidParameter,
                  "exact means are available for symmetric families only; use the float backend");
    const Rational xr = parse_rational(x);
    if (xr == 1)
      throw Error(Errc::NotL2, "the trivial character is not square summable on an infinite hypergroup");
    auto k = symmetric_dual::index_of(xr);
    if (!k) throw Error(Errc::OutsideDual, "x = " + to_text(xr) + " is not a dual point 1 - 1/k");
    *out = wrap_mean(construct_symmetric_mean<Rational>(family->family.symmetric(), *k));
  });
}

void hypalg_mean_free(hypalg_mean* mean) { delete mean; }

void hypalg_mean_info_get(const hypalg_mean* mean, hypalg_mean_info* out) {
  out->x = mean->x.c_str();
  out->truncation = mean->truncation;
  out->l1 = mean->l1.c_str();
  out->l2sq = mean->l2sq.c_str();
  out->tail_bound = mean->tail_bound;
  out->normalization_residual = mean->verification.normalization;
  out->idempotency_residual = mean->verification.idempotency;
  out->eigen_residual = mean->verification.eigen;
  out->normalization_text = mean->verification.normalization_text.c_str();
  out->idempotency_text = mean->verification.idempotency_text.c_str();
  out->eigen_text = mean->verification.eigen_text.c_str();
  out->pairs_tested = mean->verification.pairs_tested;
  out->passed = mean->verification.passed;
}

hypalg_status hypalg_mean_entry(const hypalg_mean* mean, size_t n, const char** m, const char** h) {
  if (n >= mean->m.size()) return invalid("mean index out of range");
  *m = mean->m[n].c_str();
  *h = mean->h[n].c_str();
  return HYPALG_OK;
}

}  // extern "C"
