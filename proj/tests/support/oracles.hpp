#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace oracle {

/// Number of eigenvalues of the symmetric tridiagonal matrix below x (Sturm count).
inline std::size_t count_below(const std::vector<double>& d, const std::vector<double>& e, double x) {
  std::size_t count = 0;
  double q = 1.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double off = i == 0 ? 0.0 : e[i - 1] * e[i - 1];
    q = d[i] - x - (i == 0 ? 0.0 : off / q);
    if (q == 0.0) q = -1e-300;
    if (q < 0.0) ++count;
  }
  return count;
}

/// All eigenvalues by bisection on the Sturm count, ascending.
inline std::vector<double> eigenvalues(const std::vector<double>& d, const std::vector<double>& e) {
  double lo = 0.0, hi = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double r = (i > 0 ? std::fabs(e[i - 1]) : 0.0) + (i + 1 < d.size() ? std::fabs(e[i]) : 0.0);
    lo = std::min(lo, d[i] - r);
    hi = std::max(hi, d[i] + r);
  }
  std::vector<double> out;
  for (std::size_t k = 0; k < d.size(); ++k) {
    double a = lo, b = hi;
    for (int it = 0; it < 200 && b - a > 1e-15 * std::max(1.0, std::fabs(a) + std::fabs(b)); ++it) {
      const double m = 0.5 * (a + b);
      if (count_below(d, e, m) > k)
        b = m;
      else
        a = m;
    }
    out.push_back(0.5 * (a + b));
  }
  return out;
}

/// Bound states of the Jacobi matrix with off-diagonals (l1, 1/2, 1/2, ...) and zero diagonal:
/// x = +-l1^2 / sqrt(l1^2 - 1/4) when l1^2 > 1/2.
inline double perturbed_mass_point(double l1) { return l1 * l1 / std::sqrt(l1 * l1 - 0.25); }

/// (|x| + sqrt(x^2 - 1))^{-1}
inline double decay_ratio(double x_tilde) {
  const double a = std::fabs(x_tilde);
  return 1.0 / (a + std::sqrt(a * a - 1.0));
}

}  // namespace oracle
