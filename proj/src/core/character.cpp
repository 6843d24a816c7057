#include "core/character.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "core/error.hpp"

namespace hypalg {

const char* character_method_name(CharacterMethod m) {
  return m == CharacterMethod::Forward ? "forward" : "minimal-solution";
}

template <class T>
CharacterEval<T> evaluate_character(const CoefficientArrays<T>& cf, const T& x, std::size_t N) {
  if (N >= 1 && cf.size() < N)
    throw Error(Errc::TableExhausted, "character evaluation to " + std::to_string(N) +
                                          " needs coefficients to " + std::to_string(N - 1));
  CharacterEval<T> ev;
  ev.x = x;
  ev.truncation = N;
  ev.values.reserve(N + 1);
  ev.values.push_back(T(1));
  if (N == 0) return ev;
  const T p1 = (x - cf.b[0]) / cf.a[0];
  ev.values.push_back(p1);
  for (std::size_t n = 1; n < N; ++n) {
    const T& pn = ev.values[n];
    const T& pm = ev.values[n - 1];
    ev.values.push_back(T((p1 * pn - cf.b[n] * pn - cf.c[n] * pm) / cf.a[n]));
  }
  return ev;
}

template CharacterEval<double> evaluate_character<double>(const CoefficientArrays<double>&,
                                                          const double&, std::size_t);
template CharacterEval<Rational> evaluate_character<Rational>(const CoefficientArrays<Rational>&,
                                                              const Rational&, std::size_t);

std::size_t stable_evaluation_span(std::size_t N, const StableEvaluationOptions& opts) {
  return 2 * (N + opts.lookahead) + 2;
}

namespace {

// Minimal solution of the recurrence through the ratios r_n = u_n / u_{n-1},
//   r_n = c_n / ((p_1 - b_n) - a_n r_{n+1}),  r_{start+1} = 0,
// normalized to u_0 = 1. Returns nullopt on a vanishing denominator.
std::optional<std::vector<double>> minimal_solution(const CoefficientArrays<double>& cf, double p1,
                                                    std::size_t start, std::size_t N) {
  std::vector<double> r(start + 2, 0.0);
  for (std::size_t n = start; n >= 1; --n) {
    const double denom = (p1 - cf.b[n]) - cf.a[n] * r[n + 1];
    r[n] = cf.c[n] / denom;
    if (!std::isfinite(r[n])) return std::nullopt;
  }
  std::vector<double> p(N + 1);
  p[0] = 1.0;
  for (std::size_t n = 1; n <= N; ++n) p[n] = p[n - 1] * r[n];
  return p;
}

}  // namespace

CharacterEval<double> evaluate_character_stable(const CoefficientArrays<double>& cf, double x,
                                                std::size_t N,
                                                const StableEvaluationOptions& opts) {
  CharacterEval<double> forward = evaluate_character(cf, x, N);
  if (N < 2) return forward;
  const std::size_t start = N + opts.lookahead;
  const std::size_t start_far = 2 * start;
  if (cf.size() < start_far + 2)
    throw Error(Errc::TableExhausted, "stable evaluation needs coefficients to " +
                                          std::to_string(start_far + 1));
  const double p1 = forward.values[1];
  auto near = minimal_solution(cf, p1, start, N);
  auto far = minimal_solution(cf, p1, start_far, N);
  if (!near || !far) return forward;

  double scale = 0.0;
  for (double v : *far) scale = std::max(scale, std::fabs(v));
  double drift = 0.0;
  for (std::size_t n = 0; n <= N; ++n) drift = std::max(drift, std::fabs((*near)[n] - (*far)[n]));
  if (!(drift <= opts.convergence_tol * scale)) return forward;

  const double ic = std::fabs((*far)[1] - p1);
  if (!(ic <= opts.initial_condition_tol * std::max(1.0, std::fabs(p1)))) return forward;

  CharacterEval<double> ev;
  ev.x = x;
  ev.truncation = N;
  ev.values = std::move(*far);
  ev.method = CharacterMethod::MinimalSolution;
  return ev;
}

double recurrence_residual(const CoefficientArrays<double>& cf, const CharacterEval<double>& ev) {
  double worst = 0.0;
  if (ev.values.size() < 3) return worst;
  const double p1 = (ev.x - cf.b[0]) / cf.a[0];
  for (std::size_t n = 1; n + 1 < ev.values.size(); ++n) {
    const double lhs = p1 * ev.values[n];
    const double rhs = cf.a[n] * ev.values[n + 1] + cf.b[n] * ev.values[n] + cf.c[n] * ev.values[n - 1];
    const double scale = std::max({1e-300, std::fabs(lhs), std::fabs(cf.a[n] * ev.values[n + 1]),
                                   std::fabs(cf.c[n] * ev.values[n - 1])});
    worst = std::max(worst, std::fabs(lhs - rhs) / scale);
  }
  return worst;
}

}  // namespace hypalg
