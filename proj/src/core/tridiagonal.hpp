#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace hypalg {

/// Eigenvalues (ascending) and squared first components of the normalized
/// eigenvectors of a real symmetric tridiagonal matrix.
struct TridiagonalSpectrum {
  std::vector<double> eigenvalues;
  std::vector<double> first_components_sq;
};

/// Implicit-shift QL. diagonal has n entries, offdiagonal n-1 (entry i couples
/// rows i and i+1). An off-diagonal entry is treated as zero once
/// |e_i| <= tol * (|d_i| + |d_{i+1}|) or |e_i| <= eps * ||T||.
/// Throws Error(EigensolverFailure) if an eigenvalue needs more than
/// max_iterations sweeps.
TridiagonalSpectrum symmetric_tridiagonal_eigen(std::span<const double> diagonal,
                                                std::span<const double> offdiagonal,
                                                double tol = 1e-12, int max_iterations = 100);

}  // namespace hypalg
