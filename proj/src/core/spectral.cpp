#include "core/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "core/character.hpp"
#include "core/error.hpp"
#include "core/tridiagonal.hpp"

namespace hypalg {

OrthonormalSystem orthonormalize(const CoefficientArrays<double>& cf, std::size_t N) {
  if (cf.size() < N + 1)
    throw Error(Errc::TableExhausted, "orthonormalize to " + std::to_string(N) +
                                          " needs coefficients to " + std::to_string(N));
  OrthonormalSystem sys;
  sys.lambda.assign(N + 1, 0.0);
  sys.beta.assign(N + 1, 0.0);
  const double a0 = cf.a[0];
  const double b0 = cf.b[0];
  sys.beta[0] = b0;
  for (std::size_t n = 1; n <= N; ++n) {
    const double prev = n == 1 ? 1.0 : cf.a[n - 1];
    if (!(cf.c[n] > 0.0 && prev > 0.0))
      throw Error(Errc::InvalidParameter,
                  "orthonormalization needs c_n a_{n-1} > 0, fails at n=" + std::to_string(n));
    sys.lambda[n] = a0 * std::sqrt(cf.c[n]) * std::sqrt(prev);
    sys.beta[n] = a0 * cf.b[n] + b0;
  }
  return sys;
}

OrthonormalSystem orthonormalize(const RecurrenceCoefficients& coeffs, std::size_t N) {
  return orthonormalize(materialize<double>(coeffs, N), N);
}

std::vector<double> evaluate_orthonormal(const OrthonormalSystem& sys, double x, std::size_t N) {
  if (sys.size() < N + 1)
    throw Error(Errc::TableExhausted, "orthonormal system shorter than " + std::to_string(N + 1));
  std::vector<double> q(N + 1, 0.0);
  q[0] = 1.0;
  if (N == 0) return q;
  q[1] = (x - sys.beta[0]) / sys.lambda[1];
  for (std::size_t n = 1; n < N; ++n)
    q[n + 1] = ((x - sys.beta[n]) * q[n] - sys.lambda[n] * q[n - 1]) / sys.lambda[n + 1];
  return q;
}

SpectralMeasure quadrature(const OrthonormalSystem& sys, std::size_t order) {
  if (order == 0) throw Error(Errc::InvalidParameter, "quadrature order must be >= 1");
  if (sys.size() < order)
    throw Error(Errc::TableExhausted, "quadrature of order " + std::to_string(order) +
                                          " needs the orthonormal system to index " +
                                          std::to_string(order - 1));
  std::vector<double> diag(sys.beta.begin(), sys.beta.begin() + static_cast<std::ptrdiff_t>(order));
  std::vector<double> off(sys.lambda.begin() + 1, sys.lambda.begin() + static_cast<std::ptrdiff_t>(order));
  TridiagonalSpectrum spec = symmetric_tridiagonal_eigen(diag, off);
  SpectralMeasure m;
  m.order = order;
  m.nodes = std::move(spec.eigenvalues);
  m.weights = std::move(spec.first_components_sq);
  return m;
}

double fourier(const SequenceMeasure<double>& f, const CoefficientArrays<double>& cf,
               const HaarWeights<double>& haar, double x) {
  if (f.size() == 0) return 0.0;
  if (haar.size() < f.size())
    throw Error(Errc::TableExhausted, "Haar weights shorter than the support of f");
  CharacterEval<double> ev = evaluate_character(cf, x, f.size() - 1);
  double sum = 0.0;
  for (std::size_t n = 0; n < f.size(); ++n) sum += f.density[n] * ev.values[n] * haar[n];
  return sum;
}

PlancherelResult plancherel_check(const SequenceMeasure<double>& f, const SpectralMeasure& measure,
                                  const CoefficientArrays<double>& cf,
                                  const HaarWeights<double>& haar) {
  std::size_t top = 0;
  for (std::size_t n = 0; n < f.size(); ++n)
    if (f.density[n] != 0.0) top = n;
  if (measure.order < top + 1)
    throw Error(Errc::OrderTooSmall, "quadrature order " + std::to_string(measure.order) +
                                         " cannot integrate degree " + std::to_string(2 * top));
  PlancherelResult r;
  for (std::size_t n = 0; n < f.size(); ++n) r.lhs += f.density[n] * f.density[n] * haar[n];
  for (std::size_t k = 0; k < measure.nodes.size(); ++k) {
    const double v = fourier(f, cf, haar, measure.nodes[k]);
    r.rhs += measure.weights[k] * v * v;
  }
  return r;
}

SupportEstimate estimate_support(const OrthonormalSystem& sys, std::vector<std::size_t> truncations,
                                 std::optional<Interval> essential, std::string essential_source,
                                 const SupportOptions& opts) {
  std::sort(truncations.begin(), truncations.end());
  truncations.erase(std::unique(truncations.begin(), truncations.end()), truncations.end());
  if (truncations.size() < 2 || truncations.front() == 0)
    throw Error(Errc::InvalidParameter, "support estimation needs at least two distinct positive truncations");
  if (sys.size() < truncations.back())
    throw Error(Errc::TableExhausted, "orthonormal system shorter than truncation " +
                                          std::to_string(truncations.back()));

  SupportEstimate est;
  est.resolution = truncations;
  std::vector<TridiagonalSpectrum> spectra;
  for (std::size_t N : truncations) {
    std::vector<double> diag(sys.beta.begin(), sys.beta.begin() + static_cast<std::ptrdiff_t>(N));
    std::vector<double> off(sys.lambda.begin() + 1, sys.lambda.begin() + static_cast<std::ptrdiff_t>(N));
    spectra.push_back(symmetric_tridiagonal_eigen(diag, off));
    est.eigenvalues.push_back(spectra.back().eigenvalues);
  }
  const TridiagonalSpectrum& finest = spectra.back();
  if (essential) {
    est.essential = *essential;
    est.essential_source = std::move(essential_source);
  } else {
    est.essential = Interval{finest.eigenvalues.front(), finest.eigenvalues.back()};
    est.essential_source = "hull";
  }

  auto outside = [&](double x) { return est.essential.distance(x) >= opts.eps; };
  for (std::size_t i = 0; i < finest.eigenvalues.size(); ++i) {
    const double x = finest.eigenvalues[i];
    if (!outside(x)) continue;
    MassPoint mp;
    mp.x = x;
    mp.weight = finest.first_components_sq[i];
    mp.stable = true;
    for (std::size_t t = 0; t + 1 < spectra.size(); ++t) {
      double best = INFINITY;
      for (double y : spectra[t].eigenvalues)
        if (outside(y)) best = std::min(best, std::fabs(y - x));
      mp.drift = std::max(mp.drift, best);
      if (!(best <= opts.match_tol)) mp.stable = false;
    }
    est.mass_points.push_back(mp);
  }
  return est;
}

bool is_isolated(double x, const SupportEstimate& estimate, double sep, double match_tol) {
  const MassPoint* hit = nullptr;
  double best = INFINITY;
  for (const auto& mp : estimate.mass_points) {
    const double d = std::fabs(mp.x - x);
    if (d < best) {
      best = d;
      hit = &mp;
    }
  }
  if (hit == nullptr || best > match_tol || !hit->stable) return false;
  if (estimate.essential.distance(hit->x) < sep) return false;
  for (const auto& mp : estimate.mass_points)
    if (&mp != hit && std::fabs(mp.x - hit->x) < sep) return false;
  return true;
}

double max_interior_gap(const std::vector<double>& eigenvalues, Interval interval) {
  double previous = interval.lo;
  double gap = 0.0;
  for (double x : eigenvalues) {
    if (x < interval.lo || x > interval.hi) continue;
    gap = std::max(gap, x - previous);
    previous = x;
  }
  return std::max(gap, interval.hi - previous);
}

}  // namespace hypalg
