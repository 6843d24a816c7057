#include "core/amenability.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <thread>

#include "core/error.hpp"
#include "core/symmetric_dual.hpp"

namespace hypalg {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string num(double v) { return to_text(v); }
std::string flag(bool v) { return v ? "true" : "false"; }

bool is_identity_point(double x) { return std::fabs(x - 1.0) <= 4 * std::numeric_limits<double>::epsilon(); }

void check_window(std::size_t window) {
  if (window < 32)
    throw Error(Errc::WindowTooSmall, "window must be at least 32, got " + std::to_string(window));
}

struct HaarTrend {
  double sup_half = 0.0;
  double sup_full = 0.0;
  bool bounded = false;
};

HaarTrend haar_trend(const std::vector<double>& h, std::size_t window, double ctol) {
  HaarTrend t;
  for (std::size_t n = 0; n <= window && n < h.size(); ++n) {
    if (n <= window / 2) t.sup_half = std::max(t.sup_half, h[n]);
    t.sup_full = std::max(t.sup_full, h[n]);
  }
  t.bounded = std::isfinite(t.sup_full) && t.sup_full <= (1.0 + ctol) * t.sup_half;
  return t;
}

}  // namespace

ClassFlags classify_family(const RecurrenceCoefficients& coeffs, const AnalysisOptions& opts) {
  const std::size_t window = opts.window;
  check_window(window);
  const CoefficientArrays<double> cf = materialize<double>(coeffs, window + 1);
  const OrthonormalSystem sys = orthonormalize(cf, window + 1);

  ClassFlags f;
  f.window = window;
  f.normalized = coeffs.normalized(window);

  const std::size_t from = window - window / 4;
  for (std::size_t n = from; n <= window; ++n) {
    f.a_c_tail_max = std::max({f.a_c_tail_max, cf.a[n], cf.c[n]});
    f.b_tail_deviation = std::max(f.b_tail_deviation, std::fabs(1.0 - cf.b[n]));
    f.lambda_deviation = std::max(f.lambda_deviation, std::fabs(sys.lambda[n] - 0.5));
    f.beta_deviation = std::max(f.beta_deviation, std::fabs(sys.beta[n]));
  }

  const auto& limits = coeffs.declared_limits();
  if (limits && limits->a == 0.0 && limits->c == 0.0 && limits->b == 1.0) {
    f.compact_type = true;
    f.compact_source = "tail-rule";
  } else if (f.a_c_tail_max <= opts.ctol && f.b_tail_deviation <= opts.ctol) {
    f.compact_type = true;
    f.compact_source = "window";
  }
  f.nevai = f.lambda_deviation <= opts.ctol && f.beta_deviation <= opts.ctol;

  if (limits) {
    f.lambda_limit = cf.a[0] * std::sqrt(limits->a * limits->c);
    f.beta_limit = cf.a[0] * limits->b + cf.b[0];
  } else {
    f.lambda_limit = sys.lambda[window];
    f.beta_limit = sys.beta[window];
  }

  double bv = 0.0;
  for (std::size_t n = 1; n <= window; ++n) {
    bv += std::fabs(sys.lambda[n + 1] - sys.lambda[n]) + std::fabs(sys.beta[n + 1] - sys.beta[n]);
    if (n == window / 2) f.bv_half = bv;
  }
  f.bv_full = bv;
  f.bounded_variation = f.bv_full - f.bv_half <= opts.ctol;

  const HaarWeights<double> haar = haar_from_coefficients<double>(coeffs, window);
  const HaarTrend trend = haar_trend(haar.h, window, opts.ctol);
  f.haar_sup_half = trend.sup_half;
  f.haar_sup_full = trend.sup_full;
  f.haar_bounded = trend.bounded;

  f.evidence = {
      {"window", std::to_string(window)},
      {"normalized", flag(f.normalized)},
      {"tail_max_a_c", num(f.a_c_tail_max)},
      {"tail_max_one_minus_b", num(f.b_tail_deviation)},
      {"compact_source", f.compact_source},
      {"lambda_deviation", num(f.lambda_deviation)},
      {"beta_deviation", num(f.beta_deviation)},
      {"lambda_limit", num(f.lambda_limit)},
      {"beta_limit", num(f.beta_limit)},
      {"bv_partial_half", num(f.bv_half)},
      {"bv_partial_full", num(f.bv_full)},
      {"haar_sup_half", num(f.haar_sup_half)},
      {"haar_sup_full", num(f.haar_sup_full)},
  };
  return f;
}

ClassFlags classify_symmetric(const SymmetricParams& params, const AnalysisOptions& opts) {
  const std::size_t window = opts.window;
  check_window(window);
  ClassFlags f;
  f.window = window;
  f.symmetric = true;
  f.normalized = params.validate(window).empty();
  const SymmetricArrays<double> arrays = materialize<double>(params, window);
  const HaarTrend trend = haar_trend(arrays.c, window, opts.ctol);
  f.haar_sup_half = trend.sup_half;
  f.haar_sup_full = trend.sup_full;
  f.haar_bounded = trend.bounded;
  f.evidence = {
      {"window", std::to_string(window)},
      {"normalized", flag(f.normalized)},
      {"haar_sup_half", num(f.haar_sup_half)},
      {"haar_sup_full", num(f.haar_sup_full)},
  };
  return f;
}

const char* norm_status_name(NormStatus s) {
  return s == NormStatus::Converged ? "converged" : "divergent";
}

double closed_form_ratio(double x_tilde) {
  const double a = std::fabs(x_tilde);
  if (!(a > 1.0)) return 1.0;
  return 1.0 / (a + std::sqrt(a * a - 1.0));
}

namespace {

NormValue summarize(const std::vector<double>& terms, double margin) {
  const std::size_t N = terms.size() - 1;
  const std::size_t s = N / 8;
  NormValue v;
  bool finite = true;
  for (double t : terms) {
    v.partial += t;
    finite = finite && std::isfinite(t);
  }
  double last = 0.0, before = 0.0;
  for (std::size_t n = N - s + 1; n <= N; ++n) last = std::max(last, terms[n]);
  for (std::size_t n = N - 2 * s + 1; n <= N - s; ++n) before = std::max(before, terms[n]);
  if (!finite || !std::isfinite(v.partial)) {
    v.trend = INFINITY;
  } else if (last == 0.0) {
    v.trend = 0.0;
  } else if (before == 0.0) {
    v.trend = INFINITY;
  } else {
    v.trend = std::pow(last / before, 1.0 / static_cast<double>(s));
  }
  if (v.trend <= 1.0 - margin) {
    v.status = NormStatus::Converged;
    const double r = std::min(v.trend + margin / 2, 1.0 - margin / 2);
    v.tail_bound = last * r / (1.0 - r);
  } else {
    v.tail_bound = INFINITY;
  }
  return v;
}

}  // namespace

CharacterNorms character_norms(const std::vector<double>& values, const HaarWeights<double>& haar,
                               double margin) {
  if (values.size() < 33)
    throw Error(Errc::WindowTooSmall, "character norms need N >= 32");
  const std::size_t N = values.size() - 1;
  if (haar.size() < N + 1) throw Error(Errc::TableExhausted, "Haar weights shorter than N");
  std::vector<double> t1(N + 1), t2(N + 1);
  for (std::size_t n = 0; n <= N; ++n) {
    t1[n] = std::fabs(values[n]) * haar[n];
    t2[n] = values[n] * values[n] * haar[n];
  }
  CharacterNorms out;
  out.truncation = N;
  out.l1 = summarize(t1, margin);
  out.l2sq = summarize(t2, margin);
  out.ratio_estimate = t1[N - 1] > 0.0 ? t1[N] / t1[N - 1] : 0.0;
  for (std::size_t n = N - N / 4; n <= N; ++n) {
    const double a = std::fabs(values[n]);
    out.growth = std::isfinite(a) ? std::max(out.growth, a) : INFINITY;
  }
  return out;
}

template <class T>
MeanVerification verify_mean(const SequenceMeasure<T>& m, const std::vector<T>& alpha,
                             const ConvolutionTable<T>& table, const HaarWeights<T>& haar,
                             const MeanOptions& opts) {
  const std::size_t R = opts.test_range;
  if (alpha.size() < std::max(m.size(), R + 1))
    throw Error(Errc::TableExhausted, "character values do not cover the mean support");
  MeanVerification v;

  T norm(0);
  for (std::size_t n = 0; n < m.size(); ++n) norm += m.density[n] * alpha[n] * haar[n];
  const T norm_res = abs_value(T(norm - T(1)));

  const SequenceMeasure<T> mm = convolve(m, m, table, haar);
  T idem(0);
  for (std::size_t n = 0; n < mm.size(); ++n) idem += abs_value(T(mm.at(n) - m.at(n))) * haar[n];

  std::vector<SequenceMeasure<T>> tests;
  for (std::size_t j = 0; j <= R; ++j) tests.push_back(SequenceMeasure<T>::indicator(j));
  SequenceMeasure<T> block;
  block.density.assign(R + 1, T(1));
  tests.push_back(block);

  T eigen(0);
  for (std::size_t y = 0; y <= R; ++y) {
    for (const auto& f : tests) {
      const SequenceMeasure<T> tf = translate(y, f, table);
      const T lhs = pairing(m, tf, haar);
      const T rhs = alpha[y] * pairing(m, f, haar);
      const T res = abs_value(T(lhs - rhs));
      if (res > eigen) eigen = res;
      ++v.pairs_tested;
    }
  }

  v.normalization = to_double(norm_res);
  v.idempotency = to_double(idem);
  v.eigen = to_double(eigen);
  v.normalization_text = to_text(norm_res);
  v.idempotency_text = to_text(idem);
  v.eigen_text = to_text(eigen);
  v.passed = v.normalization <= opts.normalization_tol && v.idempotency <= opts.idempotency_tol &&
             v.eigen <= opts.eigen_tol;
  return v;
}

template <class T>
AlphaMean<T> construct_symmetric_mean(const SymmetricParams& params, std::size_t k,
                                      const MeanOptions& opts) {
  if (k == 0) throw Error(Errc::NotL2, "the trivial character is not square summable on an infinite hypergroup");
  const std::size_t R = opts.test_range;
  const std::size_t level = std::max(k, 2 * R);
  const SymmetricArrays<T> arrays = materialize<T>(params, std::max(2 * k, 2 * R) + 1);
  const std::vector<T> alpha = symmetric_dual::character(arrays, k, std::max(k, R));

  AlphaMean<T> mean;
  mean.x = symmetric_dual::point(k);
  mean.x_text = to_text(Rational(Rational(1) - Rational(1, static_cast<unsigned long>(k))));
  mean.l1 = symmetric_dual::l1_norm(arrays, k);
  mean.l2sq = symmetric_dual::l2_norm_sq(arrays, k);
  mean.truncation = k;
  mean.density.density.assign(alpha.begin(), alpha.begin() + static_cast<std::ptrdiff_t>(k + 1));
  for (auto& v : mean.density.density) v /= mean.l2sq;
  mean.haar.h = arrays.c;
  const ConvolutionTable<T> table = ConvolutionTable<T>::symmetric(params, level);
  mean.verification = verify_mean(mean.density, alpha, table, mean.haar, opts);
  return mean;
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::IdentityAlwaysAmenable: return "IDENTITY_ALWAYS_AMENABLE";
    case Verdict::UniqueMean: return "UNIQUE_MEAN";
    case Verdict::Amenable: return "AMENABLE";
    case Verdict::NotAmenable: return "NOT_AMENABLE";
    case Verdict::OutsideDual: return "OUTSIDE_DUAL";
    case Verdict::Inconclusive: return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

CorollaryResult corollary_check(const std::vector<AmenabilityReport>& reports,
                                const SupportEstimate& support, double eps) {
  CorollaryResult r;
  bool all_unique = true;
  for (const auto& rep : reports) {
    if (rep.verdict == Verdict::IdentityAlwaysAmenable || rep.verdict == Verdict::OutsideDual) continue;
    ++r.sampled;
    all_unique = all_unique && rep.verdict == Verdict::UniqueMean;
  }
  r.antecedent = r.sampled > 0 && all_unique;
  r.conclusion = support.essential.distance(1.0) <= eps;
  for (const auto& mp : support.mass_points)
    r.conclusion = r.conclusion || std::fabs(mp.x - 1.0) <= eps;
  return r;
}

struct Analyzer::Impl {
  Family family;
  AnalysisOptions opts;
  ClassFlags flags;
  SupportEstimate support;
  // polynomial families
  std::optional<CoefficientArrays<double>> cf;
  HaarWeights<double> haar;
  std::optional<ConvolutionTable<double>> table;
  double lambda_inf = 0.0;
  double beta_inf = 0.0;
  // symmetric families
  std::optional<SymmetricArrays<double>> arrays;

  Impl(Family f, AnalysisOptions o) : family(std::move(f)), opts(std::move(o)) {
    if (opts.truncations.empty() ||
        *std::max_element(opts.truncations.begin(), opts.truncations.end()) > opts.max_level)
      throw Error(Errc::InvalidParameter, "max_level must be at least the largest truncation");
    if (family.is_symmetric()) init_symmetric();
    else init_polynomial();
  }

  void init_polynomial() {
    const RecurrenceCoefficients& coeffs = family.polynomial();
    flags = classify_family(coeffs, opts);
    const std::size_t top = *std::max_element(opts.truncations.begin(), opts.truncations.end());
    const std::size_t span = std::max({stable_evaluation_span(opts.window), top + 2, opts.window + 2});
    cf = materialize<double>(coeffs, span);
    haar = haar_from_coefficients<double>(coeffs, opts.window);
    lambda_inf = flags.lambda_limit;
    beta_inf = flags.beta_limit;
    const OrthonormalSystem sys = orthonormalize(*cf, top);
    std::optional<Interval> essential;
    std::string source;
    if (flags.nevai) {
      essential = Interval{-1.0, 1.0};
      source = "nevai";
    } else if (flags.compact_type) {
      essential = Interval{beta_inf, beta_inf};
      source = "compact";
    }
    support = estimate_support(sys, opts.truncations, essential, source,
                               SupportOptions{opts.eps, opts.match_tol});
    table = ConvolutionTable<double>::polynomial(coeffs, opts.max_level);
  }

  void init_symmetric() {
    const SymmetricParams& params = family.symmetric();
    flags = classify_symmetric(params, opts);
    arrays = materialize<double>(params, std::max(opts.window, opts.max_level));
    haar.h = arrays->c;
    support = symmetric_dual::estimate_support(params, opts.truncations,
                                               SupportOptions{opts.eps, opts.match_tol});
  }

  double to_tilde(double x) const {
    if (family.is_symmetric()) return x;
    if (lambda_inf == 0.0) return kNaN;
    return (x - beta_inf) / (2.0 * lambda_inf);
  }

  CharacterEval<double> character(double x) const {
    if (!family.is_symmetric()) return evaluate_character_stable(*cf, x, opts.window);
    CharacterEval<double> ev;
    ev.x = x;
    ev.truncation = opts.window;
    auto k = symmetric_dual::index_of(x);
    if (is_identity_point(x)) {
      ev.values.assign(opts.window + 1, 1.0);
    } else if (k && *k <= opts.window) {
      ev.values = symmetric_dual::character(*arrays, *k, opts.window);
    } else {
      throw Error(Errc::OutsideDual, "x = " + num(x) + " is not a character of the symmetric hypergroup");
    }
    return ev;
  }

  CharacterNorms norms_from(const CharacterEval<double>& ev) const {
    CharacterNorms n;
    auto k = family.is_symmetric() ? symmetric_dual::index_of(ev.x) : std::nullopt;
    if (k && !is_identity_point(ev.x)) {
      n.truncation = *k;
      n.l1.status = n.l2sq.status = NormStatus::Converged;
      n.l1.partial = symmetric_dual::l1_norm(*arrays, *k);
      n.l2sq.partial = symmetric_dual::l2_norm_sq(*arrays, *k);
      n.growth = std::max(1.0, arrays->b[*k]);
      n.ratio_estimate = 0.0;
    } else {
      n = character_norms(ev.values, haar, opts.margin);
    }
    n.x = ev.x;
    n.x_tilde = to_tilde(ev.x);
    n.closed_form_ratio = std::isnan(n.x_tilde) ? kNaN : closed_form_ratio(n.x_tilde);
    return n;
  }

  AlphaMean<double> mean_from(double x, const CharacterEval<double>& ev, const CharacterNorms& n) const {
    if (n.growth > opts.growth_bound)
      throw Error(Errc::OutsideDual, "p_n(" + num(x) + ") grows beyond " + num(opts.growth_bound) +
                                         "; x does not parametrize a bounded character");
    if (n.l2sq.status != NormStatus::Converged)
      throw Error(Errc::NotL2, "||alpha_x||_2 diverges at x = " + num(x) +
                                   "; a character with a unique mean must be square summable, and the "
                                   "trivial character is so only on a compact hypergroup");
    if (family.is_symmetric()) {
      auto k = symmetric_dual::index_of(x);
      return construct_symmetric_mean<double>(family.symmetric(), *k, opts.mean);
    }
    const std::size_t N = n.truncation;
    const double l2sq = n.l2sq.partial;
    std::vector<double> suffix(N + 2, 0.0);
    for (std::size_t i = N + 1; i-- > 0;) suffix[i] = suffix[i + 1] + std::fabs(ev.values[i]) * haar[i];
    const double tail_extra = n.l1.status == NormStatus::Converged ? n.l1.tail_bound : INFINITY;
    std::size_t L = N;
    for (std::size_t i = 0; i <= N; ++i) {
      if (suffix[i + 1] + tail_extra <= opts.mean.tail_tol * l2sq) {
        L = i;
        break;
      }
    }
    const std::size_t R = opts.mean.test_range;
    AlphaMean<double> mean;
    mean.x = x;
    mean.x_text = num(x);
    mean.l1 = n.l1.partial;
    mean.l2sq = l2sq;
    mean.truncation = L;
    mean.tail_bound = (suffix[L + 1] + tail_extra) / l2sq;
    mean.density.density.assign(ev.values.begin(), ev.values.begin() + static_cast<std::ptrdiff_t>(L + 1));
    for (auto& v : mean.density.density) v /= l2sq;
    mean.haar = haar_from_coefficients<double>(family.polynomial(), std::max(2 * L, 2 * R) + 1);
    if (std::max(L, 2 * R) > table->max_level())
      throw Error(Errc::TableExhausted, "mean support " + std::to_string(L) + " exceeds max_level " +
                                            std::to_string(table->max_level()));
    std::vector<double> alpha(ev.values.begin(),
                              ev.values.begin() + static_cast<std::ptrdiff_t>(std::max(L, R) + 1));
    mean.verification = verify_mean(mean.density, alpha, *table, mean.haar, opts.mean);
    return mean;
  }

  AmenabilityReport analyze(double x) const {
    AmenabilityReport rep;
    rep.x = x;
    rep.x_tilde = to_tilde(x);
    rep.evidence.push_back({"x_tilde", num(rep.x_tilde)});
    const bool identity = is_identity_point(x) && flags.normalized;
    if (family.is_symmetric() && !identity) {
      auto k = symmetric_dual::index_of(x);
      if (!k || *k > opts.window) {
        rep.verdict = Verdict::OutsideDual;
        rep.clause = "outside-dual";
        rep.evidence.push_back({"rule", k ? "dual point beyond the analysis window" : "x is not a dual point 1 - 1/k"});
        return rep;
      }
      rep.evidence.push_back({"dual_index", std::to_string(*k)});
    }

    const CharacterEval<double> ev = character(x);
    rep.method = ev.method;
    const CharacterNorms n = norms_from(ev);
    rep.norms = n;
    rep.evidence.push_back({"method", character_method_name(ev.method)});
    rep.evidence.push_back({"growth_sup", num(n.growth)});
    rep.evidence.push_back({"growth_bound", num(opts.growth_bound)});
    rep.evidence.push_back({"l1", num(n.l1.partial)});
    rep.evidence.push_back({"l1_status", norm_status_name(n.l1.status)});
    rep.evidence.push_back({"l1_trend", num(n.l1.trend)});
    rep.evidence.push_back({"l2sq", num(n.l2sq.partial)});
    rep.evidence.push_back({"l2sq_status", norm_status_name(n.l2sq.status)});
    rep.evidence.push_back({"ratio_estimate", num(n.ratio_estimate)});
    rep.evidence.push_back({"closed_form_ratio", num(n.closed_form_ratio)});

    if (identity) {
      rep.verdict = Verdict::IdentityAlwaysAmenable;
      rep.clause = "identity";
      rep.evidence.push_back({"rule", "the trivial character of a commutative hypergroup always has a mean"});
      return rep;
    }

    if (!(n.growth <= opts.growth_bound)) {
      rep.verdict = Verdict::OutsideDual;
      rep.clause = "outside-dual";
      rep.evidence.push_back({"rule", "|p_n(x)| exceeds the growth bound over the last quarter of the window"});
      return rep;
    }

    rep.isolated = is_isolated(x, support, opts.sep, opts.match_tol);
    rep.evidence.push_back({"isolated", flag(rep.isolated)});
    const bool converged =
        n.l1.status == NormStatus::Converged && n.l2sq.status == NormStatus::Converged;

    if (converged && rep.isolated) {
      const bool positive =
          std::none_of(ev.values.begin(), ev.values.end(), [](double v) { return v < 0.0; });
      if (flags.normalized && positive) {
        rep.verdict = Verdict::Inconclusive;
        rep.clause = "inconclusive:positive-character";
        rep.evidence.push_back({"rule", "a positive character with a unique mean is trivial; rejecting"});
        return rep;
      }
      try {
        AlphaMean<double> mean = mean_from(x, ev, n);
        const auto& v = mean.verification;
        rep.evidence.push_back({"mean_truncation", std::to_string(mean.truncation)});
        rep.evidence.push_back({"mean_normalization_residual", num(v.normalization)});
        rep.evidence.push_back({"mean_idempotency_residual", num(v.idempotency)});
        rep.evidence.push_back({"mean_eigen_residual", num(v.eigen)});
        if (v.passed) {
          rep.verdict = Verdict::UniqueMean;
          rep.clause = "unique-mean";
          rep.evidence.push_back({"rule", "alpha in l1 and l2, isolated in the dual; m = alpha / ||alpha||_2^2"});
        } else {
          rep.verdict = Verdict::Inconclusive;
          rep.clause = "inconclusive:mean-verification";
        }
        rep.mean = std::move(mean);
      } catch (const Error& e) {
        rep.verdict = Verdict::Inconclusive;
        rep.clause = "inconclusive:mean-construction";
        rep.evidence.push_back({"error", e.what()});
      }
      return rep;
    }

    if (!family.is_symmetric() && flags.nevai && flags.bounded_variation &&
        std::fabs(rep.x_tilde) < 1.0) {
      rep.evidence.push_back({"haar_bounded", flag(flags.haar_bounded)});
      if (flags.haar_bounded) {
        rep.verdict = Verdict::Amenable;
        rep.clause = "amenable:h-bounded";
        rep.evidence.push_back({"rule", "BV and M(0,1) family, |x~| < 1, h bounded (applied as a rule)"});
      } else {
        rep.verdict = Verdict::NotAmenable;
        rep.clause = "not-amenable:h-unbounded";
        rep.evidence.push_back({"rule", "BV and M(0,1) family, |x~| < 1, h unbounded (applied as a rule)"});
      }
      return rep;
    }

    rep.verdict = Verdict::Inconclusive;
    rep.clause = converged ? "inconclusive:not-isolated" : "inconclusive:no-rule";
    return rep;
  }
};

Analyzer::Analyzer(Family family, AnalysisOptions opts)
    : impl_(std::make_unique<Impl>(std::move(family), std::move(opts))) {}
Analyzer::~Analyzer() = default;
Analyzer::Analyzer(Analyzer&&) noexcept = default;
Analyzer& Analyzer::operator=(Analyzer&&) noexcept = default;

const Family& Analyzer::family() const { return impl_->family; }
const AnalysisOptions& Analyzer::options() const { return impl_->opts; }
const ClassFlags& Analyzer::flags() const { return impl_->flags; }
const SupportEstimate& Analyzer::support() const { return impl_->support; }

double Analyzer::to_tilde(double x) const { return impl_->to_tilde(x); }

double Analyzer::from_tilde(double x_tilde) const {
  if (impl_->family.is_symmetric()) return x_tilde;
  return impl_->beta_inf + 2.0 * impl_->lambda_inf * x_tilde;
}

CharacterEval<double> Analyzer::character(double x) const { return impl_->character(x); }

CharacterNorms Analyzer::norms(double x) const { return impl_->norms_from(impl_->character(x)); }

AmenabilityReport Analyzer::analyze(double x) const { return impl_->analyze(x); }

std::vector<AmenabilityReport> Analyzer::analyze_all(const std::vector<double>& xs) const {
  std::vector<AmenabilityReport> out(xs.size());
  std::vector<std::exception_ptr> errors(xs.size());
  std::size_t workers = impl_->opts.threads;
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, std::max<std::size_t>(1, xs.size()));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < xs.size(); i = next++) {
      try {
        out[i] = impl_->analyze(xs[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

AlphaMean<double> Analyzer::construct_mean(double x) const {
  if (impl_->family.is_symmetric()) {
    auto k = symmetric_dual::index_of(x);
    if (is_identity_point(x))
      throw Error(Errc::NotL2, "the trivial character is not square summable on an infinite hypergroup");
    if (!k) throw Error(Errc::OutsideDual, "x = " + num(x) + " is not a character of the symmetric hypergroup");
  }
  const CharacterEval<double> ev = impl_->character(x);
  return impl_->mean_from(x, ev, impl_->norms_from(ev));
}

template MeanVerification verify_mean<double>(const SequenceMeasure<double>&, const std::vector<double>&,
                                              const ConvolutionTable<double>&,
                                              const HaarWeights<double>&, const MeanOptions&);
template MeanVerification verify_mean<Rational>(const SequenceMeasure<Rational>&,
                                                const std::vector<Rational>&,
                                                const ConvolutionTable<Rational>&,
                                                const HaarWeights<Rational>&, const MeanOptions&);
template AlphaMean<double> construct_symmetric_mean<double>(const SymmetricParams&, std::size_t,
                                                            const MeanOptions&);
template AlphaMean<Rational> construct_symmetric_mean<Rational>(const SymmetricParams&, std::size_t,
                                                                const MeanOptions&);

}  // namespace hypalg
