#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "core/algebra.hpp"
#include "core/coefficients.hpp"

namespace hypalg {

/// Orthonormal recurrence x q_n = lambda_{n+1} q_{n+1} + beta_n q_n + lambda_n q_{n-1},
/// q_n = sqrt(h(n)) p_n.
struct OrthonormalSystem {
  std::vector<double> lambda;  // lambda[0] = 0
  std::vector<double> beta;

  std::size_t size() const { return beta.size(); }
};

/// lambda_1 = a_0 sqrt(c_1), lambda_n = a_0 sqrt(c_n a_{n-1}) (n >= 2),
/// beta_0 = b_0, beta_n = a_0 b_n + b_0; indices 0..N.
OrthonormalSystem orthonormalize(const CoefficientArrays<double>& cf, std::size_t N);
OrthonormalSystem orthonormalize(const RecurrenceCoefficients& coeffs, std::size_t N);

/// q_0(x), ..., q_N(x) from the orthonormal recurrence.
std::vector<double> evaluate_orthonormal(const OrthonormalSystem& sys, double x, std::size_t N);

/// Gauss quadrature for the orthogonality measure: nodes ascending, weights sum to 1.
struct SpectralMeasure {
  std::vector<double> nodes;
  std::vector<double> weights;
  std::size_t order = 0;
};

/// Golub-Welsch on the order x order Jacobi matrix.
SpectralMeasure quadrature(const OrthonormalSystem& sys, std::size_t order);

/// f^(x) = sum_n f(n) p_n(x) h(n).
double fourier(const SequenceMeasure<double>& f, const CoefficientArrays<double>& cf,
               const HaarWeights<double>& haar, double x);

struct PlancherelResult {
  double lhs = 0.0;  // sum_n f(n)^2 h(n)
  double rhs = 0.0;  // sum_k w_k f^(x_k)^2
};

/// Throws Error(OrderTooSmall) when measure.order <= max support index of f.
PlancherelResult plancherel_check(const SequenceMeasure<double>& f, const SpectralMeasure& measure,
                                  const CoefficientArrays<double>& cf,
                                  const HaarWeights<double>& haar);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double distance(double x) const {
    if (x < lo) return lo - x;
    if (x > hi) return x - hi;
    return 0.0;
  }
};

struct MassPoint {
  double x = 0.0;
  double weight = 0.0;
  bool stable = false;
  double drift = 0.0;  // largest location change across truncations
};

struct SupportEstimate {
  Interval essential;
  std::string essential_source;  // "nevai", "compact", "hull", "symmetric"
  std::vector<MassPoint> mass_points;
  std::vector<std::size_t> resolution;
  std::vector<std::vector<double>> eigenvalues;  // per truncation
};

struct SupportOptions {
  double eps = 1e-3;
  double match_tol = 1e-6;
};

/// Eigenvalues of the truncated Jacobi matrix at each truncation; eigenvalues
/// farther than eps from the essential interval are mass-point candidates,
/// stable when every truncation has one within match_tol. With no essential
/// interval given, the eigenvalue hull of the largest truncation is used.
SupportEstimate estimate_support(const OrthonormalSystem& sys, std::vector<std::size_t> truncations,
                                 std::optional<Interval> essential, std::string essential_source,
                                 const SupportOptions& opts = {});

/// x is a stable mass point (within match_tol) at distance >= sep from the
/// essential interval and from every other mass point.
bool is_isolated(double x, const SupportEstimate& estimate, double sep, double match_tol = 1e-6);

/// Largest gap between consecutive eigenvalues inside [lo, hi], including the
/// gaps to the interval ends.
double max_interior_gap(const std::vector<double>& eigenvalues, Interval interval);

}  // namespace hypalg
