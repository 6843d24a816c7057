#include "core/coefficients.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "core/error.hpp"

namespace hypalg {

RecurrenceCoefficients::RecurrenceCoefficients(std::string name, Generator a, Generator b,
                                               Generator c,
                                               std::optional<CoefficientLimits> limits)
    : name_(std::move(name)), a_(std::move(a)), b_(std::move(b)), c_(std::move(c)),
      limits_(limits) {}

std::vector<std::string> RecurrenceCoefficients::validate(std::size_t n_max) const {
  std::vector<std::string> issues;
  auto note = [&](const std::string& what, std::size_t n) {
    std::ostringstream os;
    os << what << " at n=" << n;
    issues.push_back(os.str());
  };
  if (sgn(a(0)) <= 0) note("a_n <= 0", 0);
  if (a(0) + b(0) != 1) note("a_0 + b_0 != 1", 0);
  for (std::size_t n = 1; n <= n_max; ++n) {
    Rational an = a(n), bn = b(n), cn = c(n);
    if (sgn(an) <= 0) note("a_n <= 0", n);
    if (sgn(cn) <= 0) note("c_n <= 0", n);
    if (an + bn + cn != 1) note("a_n + b_n + c_n != 1", n);
    if (issues.size() > 16) break;
  }
  return issues;
}

bool RecurrenceCoefficients::normalized(std::size_t n_max) const {
  return validate(n_max).empty();
}

SymmetricParams::SymmetricParams(std::string name, Generator b)
    : name_(std::move(name)), b_(std::move(b)) {}

std::vector<std::string> SymmetricParams::validate(std::size_t n_max) const {
  std::vector<std::string> issues;
  for (std::size_t n = 1; n <= n_max; ++n) {
    Rational bn = b(n);
    if (sgn(bn) <= 0 || bn > 1) {
      issues.push_back("b_n outside (0,1] at n=" + std::to_string(n));
      if (issues.size() > 16) break;
    }
  }
  return issues;
}

template <class T>
CoefficientArrays<T> materialize(const RecurrenceCoefficients& coeffs, std::size_t n_max) {
  CoefficientArrays<T> out;
  out.a.reserve(n_max + 1);
  out.b.reserve(n_max + 1);
  out.c.reserve(n_max + 1);
  out.b_complement.reserve(n_max + 1);
  for (std::size_t n = 0; n <= n_max; ++n) {
    out.a.push_back(convert<T>(coeffs.a(n)));
    const Rational b = coeffs.b(n);
    out.b.push_back(convert<T>(b));
    out.b_complement.push_back(convert<T>(Rational(1 - b)));
    out.c.push_back(convert<T>(coeffs.c(n)));
  }
  return out;
}

template <class T>
SymmetricArrays<T> materialize(const SymmetricParams& params, std::size_t n_max) {
  // c is accumulated exactly and converted afterwards so the float view is
  // the correctly rounded exact value.
  SymmetricArrays<T> out;
  out.b.reserve(n_max + 1);
  out.c.reserve(n_max + 1);
  out.b.push_back(T(0));
  out.c.push_back(T(1));
  Rational partial = 1;
  for (std::size_t n = 1; n <= n_max; ++n) {
    Rational bn = params.b(n);
    if (sgn(bn) <= 0) throw Error(Errc::InvalidParameter, "symmetric b_n must be positive");
    Rational cn = partial / bn;
    partial += cn;
    out.b.push_back(convert<T>(bn));
    out.c.push_back(convert<T>(cn));
  }
  return out;
}

template CoefficientArrays<double> materialize<double>(const RecurrenceCoefficients&, std::size_t);
template CoefficientArrays<Rational> materialize<Rational>(const RecurrenceCoefficients&,
                                                           std::size_t);
template SymmetricArrays<double> materialize<double>(const SymmetricParams&, std::size_t);
template SymmetricArrays<Rational> materialize<Rational>(const SymmetricParams&, std::size_t);

const RecurrenceCoefficients& Family::polynomial() const {
  if (auto* p = std::get_if<RecurrenceCoefficients>(&spec_)) return *p;
  throw Error(Errc::InvalidParameter, "family '" + name() + "' is not a polynomial family");
}

const SymmetricParams& Family::symmetric() const {
  if (auto* p = std::get_if<SymmetricParams>(&spec_)) return *p;
  throw Error(Errc::InvalidParameter, "family '" + name() + "' is not a symmetric family");
}

const std::string& Family::name() const {
  return std::visit([](const auto& s) -> const std::string& { return s.name(); }, spec_);
}

namespace {

Rational param_or(const ParamMap& params, std::string_view key, const Rational& fallback) {
  auto it = params.find(key);
  return it == params.end() ? fallback : parse_rational(it->second);
}

void reject_unknown_params(const ParamMap& params, std::initializer_list<std::string_view> known,
                           std::string_view preset_name) {
  for (const auto& [key, value] : params) {
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw Error(Errc::InvalidParameter,
                  "preset '" + std::string(preset_name) + "' has no parameter '" + key + "'");
  }
}

// Extends a finite list by the tail rule. For "b"-type sequences of a
// normalized recurrence the geometric rule acts on 1 - b_n.
RecurrenceCoefficients::Generator tailed(std::vector<Rational> values, std::size_t first_index,
                                         TailSpec tail, bool complement) {
  return [values = std::move(values), first_index, tail, complement](std::size_t n) -> Rational {
    if (n < first_index) return 0;
    std::size_t i = n - first_index;
    if (i < values.size()) return values[i];
    const Rational& last = values.back();
    if (tail.rule == TailRule::Constant) return last;
    unsigned long steps = static_cast<unsigned long>(i - (values.size() - 1));
    Rational factor = pow(tail.ratio, steps);
    if (complement) return Rational(1 - (1 - last) * factor);
    return Rational(last * factor);
  };
}

void check_tail(const TailSpec& tail) {
  if (tail.rule == TailRule::None)
    throw Error(Errc::InvalidParameter, "explicit coefficients need a tail rule (constant or geometric)");
  if (tail.rule == TailRule::Geometric && (sgn(tail.ratio) <= 0 || tail.ratio > 1))
    throw Error(Errc::InvalidParameter, "geometric tail ratio must lie in (0,1]");
}

}  // namespace

Family preset(std::string_view name, const ParamMap& params) {
  const Rational half(1, 2);
  if (name == "chebyshev-t") {
    reject_unknown_params(params, {}, name);
    return Family(RecurrenceCoefficients(
        "chebyshev-t",
        [half](std::size_t n) { return n == 0 ? Rational(1) : half; },
        [](std::size_t) { return Rational(0); },
        [half](std::size_t) { return half; },
        CoefficientLimits{0.5, 0.0, 0.5}));
  }
  if (name == "chebyshev-u") {
    // p_n = U_n / (n + 1)
    reject_unknown_params(params, {}, name);
    return Family(RecurrenceCoefficients(
        "chebyshev-u",
        [](std::size_t n) {
          Rational r(static_cast<long>(n + 2), static_cast<long>(2 * n + 2));
          r.canonicalize();
          return r;
        },
        [](std::size_t) { return Rational(0); },
        [](std::size_t n) {
          Rational r(static_cast<long>(n), static_cast<long>(2 * n + 2));
          r.canonicalize();
          return r;
        },
        CoefficientLimits{0.5, 0.0, 0.5}));
  }
  if (name == "geometric-compact") {
    reject_unknown_params(params, {"q"}, name);
    Rational q = param_or(params, "q", half);
    if (sgn(q) <= 0 || q >= 1)
      throw Error(Errc::InvalidParameter, "geometric-compact needs q in (0,1), got " + to_text(q));
    return Family(RecurrenceCoefficients(
        "geometric-compact",
        [q](std::size_t n) { return n == 0 ? Rational(1) : pow(q, n); },
        [q](std::size_t n) { return n == 0 ? Rational(0) : Rational(1 - 2 * pow(q, n)); },
        [q](std::size_t n) { return pow(q, n); },
        CoefficientLimits{0.0, 1.0, 0.0}));
  }
  if (name == "perturbed-chebyshev") {
    // Jacobi matrix of chebyshev-t with the first off-diagonal entry replaced
    // by lambda1, in orthonormal normalization (h = 1).
    reject_unknown_params(params, {"lambda1"}, name);
    Rational lambda1 = param_or(params, "lambda1", Rational(1));
    if (sgn(lambda1) <= 0)
      throw Error(Errc::InvalidParameter, "perturbed-chebyshev needs lambda1 > 0");
    Rational tail = 1 / (2 * lambda1);
    return Family(RecurrenceCoefficients(
        "perturbed-chebyshev",
        [lambda1, tail](std::size_t n) { return n == 0 ? lambda1 : tail; },
        [](std::size_t) { return Rational(0); },
        [tail](std::size_t n) { return n == 1 ? Rational(1) : tail; },
        CoefficientLimits{to_double(tail), 0.0, to_double(tail)}));
  }
  if (name == "symmetric") {
    reject_unknown_params(params, {"b"}, name);
    Rational b = param_or(params, "b", Rational(1));
    if (sgn(b) <= 0 || b > 1)
      throw Error(Errc::InvalidParameter, "symmetric needs b in (0,1], got " + to_text(b));
    return Family(SymmetricParams("symmetric", [b](std::size_t) { return b; }));
  }
  throw Error(Errc::UnknownPreset, "unknown preset '" + std::string(name) + "'");
}

std::vector<std::string> preset_names() {
  return {"chebyshev-t", "chebyshev-u", "geometric-compact", "perturbed-chebyshev", "symmetric",
          "explicit"};
}

Family explicit_family(std::vector<Rational> a, std::vector<Rational> b, std::vector<Rational> c,
                       TailSpec tail) {
  check_tail(tail);
  if (a.empty() || b.empty() || c.empty())
    throw Error(Errc::InvalidParameter, "explicit coefficients need nonempty a, b and c lists");
  std::optional<CoefficientLimits> limits;
  if (tail.rule == TailRule::Constant)
    limits = CoefficientLimits{to_double(a.back()), to_double(b.back()), to_double(c.back())};
  else if (tail.ratio < 1)
    limits = CoefficientLimits{0.0, 1.0, 0.0};
  else
    limits = CoefficientLimits{to_double(a.back()), to_double(b.back()), to_double(c.back())};
  return Family(RecurrenceCoefficients("explicit", tailed(std::move(a), 0, tail, false),
                                       tailed(std::move(b), 0, tail, true),
                                       tailed(std::move(c), 1, tail, false), limits));
}

Family symmetric_family(std::vector<Rational> b, TailSpec tail) {
  check_tail(tail);
  if (b.empty()) throw Error(Errc::InvalidParameter, "symmetric family needs a nonempty b list");
  for (const auto& v : b)
    if (sgn(v) <= 0 || v > 1)
      throw Error(Errc::InvalidParameter, "symmetric b_n must lie in (0,1], got " + to_text(v));
  return Family(SymmetricParams("symmetric", tailed(std::move(b), 1, tail, false)));
}

}  // namespace hypalg
