#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <vector>

namespace oracle {

using Poly = std::vector<mpq_class>;  // monomial coefficients, lowest degree first

/// p_0 .. p_n in the monomial basis from the three-term recurrence.
template <class A, class B, class C>
std::vector<Poly> monomial_basis(std::size_t n, A a, B b, C c) {
  std::vector<Poly> p;
  p.push_back(Poly{1});
  if (n == 0) return p;
  p.push_back(Poly{-b(0) / a(0), 1 / a(0)});
  for (std::size_t k = 1; k < n; ++k) {
    Poly next(k + 2, 0);
    for (std::size_t i = 0; i < p[k].size(); ++i) {
      for (std::size_t j = 0; j < p[1].size(); ++j) next[i + j] += p[k][i] * p[1][j];
      next[i] -= b(k) * p[k][i];
    }
    for (std::size_t i = 0; i < p[k - 1].size(); ++i) next[i] -= c(k) * p[k - 1][i];
    for (auto& v : next) v /= a(k);
    p.push_back(next);
  }
  return p;
}

/// Coefficients g(j,k,.) of p_j p_k in the basis p_0 .. p_{j+k}.
inline std::vector<mpq_class> linearize(const std::vector<Poly>& p, std::size_t j, std::size_t k) {
  Poly prod(j + k + 1, 0);
  for (std::size_t a = 0; a < p[j].size(); ++a)
    for (std::size_t b = 0; b < p[k].size(); ++b) prod[a + b] += p[j][a] * p[k][b];
  std::vector<mpq_class> g(j + k + 1, 0);
  for (std::size_t d = j + k + 1; d-- > 0;) {
    g[d] = prod[d] / p[d][d];
    for (std::size_t i = 0; i <= d; ++i) prod[i] -= g[d] * p[d][i];
  }
  return g;
}

}  // namespace oracle
