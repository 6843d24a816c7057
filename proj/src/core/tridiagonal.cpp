#include "core/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "core/error.hpp"

namespace hypalg {

TridiagonalSpectrum symmetric_tridiagonal_eigen(std::span<const double> diagonal,
                                                std::span<const double> offdiagonal, double tol,
                                                int max_iterations) {
  const std::size_t n = diagonal.size();
  if (n == 0) return {};
  if (offdiagonal.size() + 1 != n)
    throw Error(Errc::InvalidParameter, "tridiagonal matrix needs n-1 off-diagonal entries");

  std::vector<double> d(diagonal.begin(), diagonal.end());
  std::vector<double> e(n, 0.0);
  std::copy(offdiagonal.begin(), offdiagonal.end(), e.begin());
  // First row of the accumulated rotations.
  std::vector<double> z(n, 0.0);
  z[0] = 1.0;

  double norm = 0.0;
  for (std::size_t i = 0; i < n; ++i) norm = std::max(norm, std::fabs(d[i]) + std::fabs(e[i]));
  const double abs_floor = std::numeric_limits<double>::epsilon() * norm;

  for (std::size_t l = 0; l < n; ++l) {
    int iterations = 0;
    for (;;) {
      std::size_t m = l;
      for (; m + 1 < n; ++m) {
        const double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
        if (std::fabs(e[m]) <= tol * dd || std::fabs(e[m]) <= abs_floor) break;
      }
      if (m == l) break;
      if (++iterations > max_iterations)
        throw Error(Errc::EigensolverFailure,
                    "QL iteration did not converge for eigenvalue " + std::to_string(l) + " of " +
                        std::to_string(n));

      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0, c = 1.0, p = 0.0;
      bool underflow = false;
      for (std::size_t i = m; i-- > l;) {
        double f = s * e[i];
        const double b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          e[m] = 0.0;
          underflow = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
        f = z[i + 1];
        z[i + 1] = s * z[i] + c * f;
        z[i] = c * z[i] - s * f;
      }
      if (underflow) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });
  TridiagonalSpectrum out;
  out.eigenvalues.reserve(n);
  out.first_components_sq.reserve(n);
  for (std::size_t i : order) {
    out.eigenvalues.push_back(d[i]);
    out.first_components_sq.push_back(z[i] * z[i]);
  }
  return out;
}

}  // namespace hypalg
