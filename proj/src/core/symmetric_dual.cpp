#include "core/symmetric_dual.hpp"

#include <algorithm>
#include <cmath>

#include "core/error.hpp"

namespace hypalg::symmetric_dual {

double point(std::size_t k) { return 1.0 - 1.0 / static_cast<double>(k); }

std::optional<std::size_t> index_of(double x, double tol) {
  if (!(x < 1.0) || x < 0.0) return std::nullopt;
  const double k = std::round(1.0 / (1.0 - x));
  if (k < 1.0 || k > 1e15) return std::nullopt;
  const auto idx = static_cast<std::size_t>(k);
  if (std::fabs(point(idx) - x) <= tol) return idx;
  return std::nullopt;
}

std::optional<std::size_t> index_of(const Rational& x) {
  if (!(x < 1) || sgn(x) < 0) return std::nullopt;
  Rational inv = 1 / (1 - x);
  inv.canonicalize();
  if (inv.get_den() != 1 || !inv.get_num().fits_ulong_p()) return std::nullopt;
  return static_cast<std::size_t>(inv.get_num().get_ui());
}

template <class T>
std::vector<T> character(const SymmetricArrays<T>& arrays, std::size_t k, std::size_t N) {
  if (k == 0) throw Error(Errc::InvalidParameter, "symmetric characters are indexed from k = 1");
  if (k >= arrays.size())
    throw Error(Errc::TableExhausted, "symmetric parameters end before k=" + std::to_string(k));
  std::vector<T> values(N + 1, T(0));
  for (std::size_t n = 0; n <= N && n < k; ++n) values[n] = T(1);
  if (k <= N) values[k] = T(-arrays.b[k]);
  return values;
}

template <class T>
T l2_norm_sq(const SymmetricArrays<T>& arrays, std::size_t k) {
  return T(arrays.b[k] * arrays.c[k] * (T(1) + arrays.b[k]));
}

template <class T>
T l1_norm(const SymmetricArrays<T>& arrays, std::size_t k) {
  return T(2 * arrays.b[k] * arrays.c[k]);
}

template <class T>
T plancherel_weight(const SymmetricArrays<T>& arrays, std::size_t k) {
  return T(T(1) / l2_norm_sq(arrays, k));
}

SupportEstimate estimate_support(const SymmetricParams& params, std::vector<std::size_t> truncations,
                                 const SupportOptions& opts) {
  std::sort(truncations.begin(), truncations.end());
  truncations.erase(std::unique(truncations.begin(), truncations.end()), truncations.end());
  if (truncations.size() < 2 || truncations.front() == 0)
    throw Error(Errc::InvalidParameter, "support estimation needs at least two distinct positive truncations");
  SymmetricArrays<double> arrays = materialize<double>(params, truncations.back());
  SupportEstimate est;
  est.essential = Interval{1.0, 1.0};
  est.essential_source = "symmetric";
  est.resolution = truncations;
  for (std::size_t N : truncations) {
    std::vector<double> points;
    for (std::size_t k = 1; k <= N; ++k) points.push_back(point(k));
    est.eigenvalues.push_back(std::move(points));
  }
  for (std::size_t k = 1; k <= truncations.back(); ++k) {
    const double x = point(k);
    if (est.essential.distance(x) < opts.eps) break;
    est.mass_points.push_back(MassPoint{x, plancherel_weight(arrays, k), k <= truncations.front(), 0.0});
  }
  return est;
}

template std::vector<double> character<double>(const SymmetricArrays<double>&, std::size_t, std::size_t);
template std::vector<Rational> character<Rational>(const SymmetricArrays<Rational>&, std::size_t,
                                                   std::size_t);
template double l2_norm_sq<double>(const SymmetricArrays<double>&, std::size_t);
template Rational l2_norm_sq<Rational>(const SymmetricArrays<Rational>&, std::size_t);
template double l1_norm<double>(const SymmetricArrays<double>&, std::size_t);
template Rational l1_norm<Rational>(const SymmetricArrays<Rational>&, std::size_t);
template double plancherel_weight<double>(const SymmetricArrays<double>&, std::size_t);
template Rational plancherel_weight<Rational>(const SymmetricArrays<Rational>&, std::size_t);

}  // namespace hypalg::symmetric_dual
