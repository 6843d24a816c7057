#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "core/coefficients.hpp"
#include "core/spectral.hpp"

namespace hypalg::symmetric_dual {

// The nontrivial characters of a symmetric hypergroup are
//   chi_k(n) = 1 (n < k),  -b_k (n = k),  0 (n > k),   k >= 1,
// and the trivial character 1 is their only accumulation point. They are
// placed on the real line at x_k = 1 - 1/k so that x = 1 is the identity
// for every family the tool handles.

double point(std::size_t k);

/// k with x == 1 - 1/k (to tol), or nullopt.
std::optional<std::size_t> index_of(double x, double tol = 1e-12);
std::optional<std::size_t> index_of(const Rational& x);

/// chi_k(0..N).
template <class T>
std::vector<T> character(const SymmetricArrays<T>& arrays, std::size_t k, std::size_t N);

/// ||chi_k||_2^2 = b_k c_k (1 + b_k).
template <class T>
T l2_norm_sq(const SymmetricArrays<T>& arrays, std::size_t k);

/// ||chi_k||_1 = 2 b_k c_k.
template <class T>
T l1_norm(const SymmetricArrays<T>& arrays, std::size_t k);

/// Plancherel mass of chi_k, 1 / ||chi_k||_2^2.
template <class T>
T plancherel_weight(const SymmetricArrays<T>& arrays, std::size_t k);

/// Dual points x_k (k up to each truncation) as the spectrum; mass points are
/// those at distance >= eps from the accumulation point 1, stable when present
/// at every truncation.
SupportEstimate estimate_support(const SymmetricParams& params, std::vector<std::size_t> truncations,
                                 const SupportOptions& opts = {});

}  // namespace hypalg::symmetric_dual
