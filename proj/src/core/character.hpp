#pragma once

#include <cstddef>
#include <vector>

#include "core/coefficients.hpp"
#include "core/scalar.hpp"

namespace hypalg {

enum class CharacterMethod { Forward, MinimalSolution };

const char* character_method_name(CharacterMethod m);

/// p_0(x), ..., p_N(x).
template <class T>
struct CharacterEval {
  T x;
  std::vector<T> values;
  std::size_t truncation = 0;
  CharacterMethod method = CharacterMethod::Forward;
};

/// Forward three-term recurrence; cf must cover indices 0..N-1.
template <class T>
CharacterEval<T> evaluate_character(const CoefficientArrays<T>& cf, const T& x, std::size_t N);

struct StableEvaluationOptions {
  double initial_condition_tol = 1e-9;
  double convergence_tol = 1e-12;
  std::size_t lookahead = 128;
};

/// Number of coefficient indices evaluate_character_stable needs for truncation N.
std::size_t stable_evaluation_span(std::size_t N, const StableEvaluationOptions& opts = {});

/// Forward recurrence, unless the minimal (recessive) solution of the
/// recurrence, obtained by backward recurrence and normalized to p_0 = 1,
/// also satisfies p_1 = (x - b_0)/a_0. In that case x is (to the stated
/// tolerance) an eigenvalue of the Jacobi operator, the forward recurrence
/// would amplify rounding along the dominant solution, and the minimal
/// solution is returned instead.
CharacterEval<double> evaluate_character_stable(const CoefficientArrays<double>& cf, double x,
                                                std::size_t N,
                                                const StableEvaluationOptions& opts = {});

/// Largest relative residual of the recurrence over n = 1..N-1.
double recurrence_residual(const CoefficientArrays<double>& cf, const CharacterEval<double>& ev);

}  // namespace hypalg
