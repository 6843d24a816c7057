#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "core/algebra.hpp"
#include "core/character.hpp"
#include "core/coefficients.hpp"
#include "core/spectral.hpp"
#include "core/table.hpp"

namespace hypalg {

struct MeanOptions {
  double tail_tol = 1e-10;
  double normalization_tol = 1e-9;
  double idempotency_tol = 1e-8;
  double eigen_tol = 1e-8;
  std::size_t test_range = 10;  // y <= test_range, f over indicators inside {0..test_range}
};

struct AnalysisOptions {
  double tol = 1e-10;
  double ctol = 1e-6;
  double eps = 1e-3;
  double sep = 1e-5;
  double match_tol = 1e-6;
  double margin = 0.05;
  double growth_bound = 1e3;
  std::size_t window = 512;
  std::size_t max_level = 512;
  std::vector<std::size_t> truncations{200, 400};
  std::size_t threads = 0;  // 0: hardware concurrency
  MeanOptions mean;
};

struct Evidence {
  std::string key;
  std::string value;
};

struct ClassFlags {
  bool symmetric = false;
  bool normalized = false;
  bool compact_type = false;
  bool nevai = false;
  bool bounded_variation = false;
  bool haar_bounded = false;
  std::string compact_source;  // "tail-rule", "window" or empty
  std::size_t window = 0;
  double a_c_tail_max = 0.0;     // max(a_n, c_n) over the last window/4 terms
  double b_tail_deviation = 0.0; // max |1 - b_n| over the same range
  double lambda_deviation = 0.0; // max |lambda_n - 1/2|
  double beta_deviation = 0.0;   // max |beta_n|
  double lambda_limit = 0.0;
  double beta_limit = 0.0;
  double bv_half = 0.0;  // BV partial sum to window/2
  double bv_full = 0.0;  // BV partial sum to window
  double haar_sup_half = 0.0;
  double haar_sup_full = 0.0;
  std::vector<Evidence> evidence;
};

/// Throws Error(WindowTooSmall) for window < 32.
ClassFlags classify_family(const RecurrenceCoefficients& coeffs, const AnalysisOptions& opts);
ClassFlags classify_symmetric(const SymmetricParams& params, const AnalysisOptions& opts);

enum class NormStatus { Converged, Divergent };

const char* norm_status_name(NormStatus s);

struct NormValue {
  NormStatus status = NormStatus::Divergent;
  double partial = 0.0;     // sum up to the truncation
  double tail_bound = 0.0;  // geometric bound on the remainder when converged
  double trend = 0.0;       // per-step decay rate of the block maxima
};

struct CharacterNorms {
  double x = 0.0;
  std::size_t truncation = 0;
  NormValue l1;
  NormValue l2sq;
  double ratio_estimate = 0.0;  // |p_N| h(N) / (|p_{N-1}| h(N-1))
  double closed_form_ratio = 1.0;
  double x_tilde = 0.0;
  double growth = 0.0;  // sup |p_n(x)| over the last quarter
};

/// Norm data from precomputed character values p_0..p_N (N >= 32), N+1 Haar weights.
CharacterNorms character_norms(const std::vector<double>& values, const HaarWeights<double>& haar,
                               double margin);

/// (|x| + sqrt(x^2 - 1))^{-1} for |x| > 1, 1 otherwise.
double closed_form_ratio(double x_tilde);

struct MeanVerification {
  double normalization = 0.0;  // |<m, alpha> - 1|
  double idempotency = 0.0;    // ||m*m - m||_1(h)
  double eigen = 0.0;          // max |<m, T_y f> - alpha(y) <m, f>|
  std::string normalization_text, idempotency_text, eigen_text;
  std::size_t pairs_tested = 0;
  bool passed = false;
};

template <class T>
struct AlphaMean {
  double x = 0.0;
  std::string x_text;
  SequenceMeasure<T> density;  // m(n) = alpha(n) / ||alpha||_2^2
  HaarWeights<T> haar;         // covering supp m
  T l1 = T(0);
  T l2sq = T(0);
  std::size_t truncation = 0;
  double tail_bound = 0.0;
  MeanVerification verification;
};

/// Normalization, idempotency and translation eigen-property of m for the
/// character values alpha (indices 0..max(supp m, test_range)).
template <class T>
MeanVerification verify_mean(const SequenceMeasure<T>& m, const std::vector<T>& alpha,
                             const ConvolutionTable<T>& table, const HaarWeights<T>& haar,
                             const MeanOptions& opts);

/// Mean of the k-th nontrivial character of a symmetric hypergroup, exact under T = Rational.
template <class T>
AlphaMean<T> construct_symmetric_mean(const SymmetricParams& params, std::size_t k,
                                      const MeanOptions& opts = {});

enum class Verdict {
  IdentityAlwaysAmenable,
  UniqueMean,
  Amenable,
  NotAmenable,
  OutsideDual,
  Inconclusive,
};

const char* verdict_name(Verdict v);

struct AmenabilityReport {
  double x = 0.0;
  double x_tilde = 0.0;
  Verdict verdict = Verdict::Inconclusive;
  std::string clause;
  std::optional<CharacterNorms> norms;
  bool isolated = false;
  CharacterMethod method = CharacterMethod::Forward;
  std::vector<Evidence> evidence;
  std::optional<AlphaMean<double>> mean;
};

struct CorollaryResult {
  bool antecedent = false;  // every sampled nontrivial dual point has a unique mean
  bool conclusion = false;  // 1 lies in the estimated support
  std::size_t sampled = 0;
  bool holds() const { return !antecedent || conclusion; }
};

CorollaryResult corollary_check(const std::vector<AmenabilityReport>& reports,
                                const SupportEstimate& support, double eps);

/// Family-level data computed once (flags, Haar weights, support estimate,
/// linearization table) and shared read-only by per-point analyses.
class Analyzer {
 public:
  Analyzer(Family family, AnalysisOptions opts);
  ~Analyzer();
  Analyzer(Analyzer&&) noexcept;
  Analyzer& operator=(Analyzer&&) noexcept;

  const Family& family() const;
  const AnalysisOptions& options() const;
  const ClassFlags& flags() const;
  const SupportEstimate& support() const;

  /// Affine map to the orthonormal variable, x~ = (x - beta_inf) / (2 lambda_inf);
  /// identity for symmetric families and NaN when lambda_inf = 0.
  double to_tilde(double x) const;
  double from_tilde(double x_tilde) const;

  /// Character values p_0..p_window at x (stable evaluation), or chi_k for symmetric families.
  CharacterEval<double> character(double x) const;
  CharacterNorms norms(double x) const;

  AmenabilityReport analyze(double x) const;
  /// Reports in input order; points are distributed over a worker pool.
  std::vector<AmenabilityReport> analyze_all(const std::vector<double>& xs) const;

  /// Throws Error(NotL2) when ||alpha_x||_2 diverges, Error(OutsideDual) when
  /// x does not parametrize a bounded character.
  AlphaMean<double> construct_mean(double x) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace hypalg
