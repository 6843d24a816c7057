#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "core/coefficients.hpp"
#include "core/scalar.hpp"
#include "core/table.hpp"

namespace hypalg {

/// Haar mass h(n) of {n}, h(0) = 1.
template <class T>
struct HaarWeights {
  std::vector<T> h;

  std::size_t size() const { return h.size(); }
  const T& operator[](std::size_t n) const { return h[n]; }
};

/// Finitely supported density against Haar: the measure of {n} is density[n] * h(n).
template <class T>
struct SequenceMeasure {
  std::vector<T> density;

  static SequenceMeasure point(std::size_t n, const HaarWeights<T>& haar) {
    SequenceMeasure m;
    m.density.assign(n + 1, T(0));
    m.density[n] = T(1) / haar[n];
    return m;
  }
  static SequenceMeasure indicator(std::size_t n) {
    SequenceMeasure m;
    m.density.assign(n + 1, T(0));
    m.density[n] = T(1);
    return m;
  }

  std::size_t size() const { return density.size(); }
  T at(std::size_t n) const { return n < density.size() ? density[n] : T(0); }
};

/// h(n) = 1 / g(n,n,0) for n <= n_max. Throws Error(DegenerateTable) when g(n,n,0) <= 0.
template <class T>
HaarWeights<T> haar_from_table(const ConvolutionTable<T>& table, std::size_t n_max);

/// Polynomial families: h(n) = (a_1 ... a_{n-1}) / (c_1 ... c_n).
template <class T>
HaarWeights<T> haar_from_coefficients(const RecurrenceCoefficients& coeffs, std::size_t n_max);

/// Symmetric families: h(n) = c_n.
template <class T>
HaarWeights<T> haar_symmetric(const SymmetricParams& params, std::size_t n_max);

/// (f*g)(n) = sum_{j,k} f(j) g(k) h(j) h(k) g(j,k,n) / h(n).
/// Pairs are visited in canonical (j <= k) order so convolve(f,g) and
/// convolve(g,f) perform identical arithmetic.
template <class T>
SequenceMeasure<T> convolve(const SequenceMeasure<T>& f, const SequenceMeasure<T>& g,
                            const ConvolutionTable<T>& table, const HaarWeights<T>& haar);

/// T_x f(y) = sum_t f(t) g(x,y,t) for every y whose row can reach supp f.
template <class T>
SequenceMeasure<T> translate(std::size_t x, const SequenceMeasure<T>& f,
                             const ConvolutionTable<T>& table);

/// <f, g> = sum_n f(n) g(n) h(n).
template <class T>
T pairing(const SequenceMeasure<T>& f, const SequenceMeasure<T>& g, const HaarWeights<T>& haar);

/// sum_n |f(n)| h(n).
template <class T>
T l1_norm(const SequenceMeasure<T>& f, const HaarWeights<T>& haar);

enum class AxiomFailure {
  None,
  Negative,
  Mass,
  Commutativity,
  Identity,
  Support,
};

const char* axiom_failure_name(AxiomFailure kind);

struct AxiomReport {
  bool passed = true;
  std::size_t level = 0;
  std::size_t pairs_checked = 0;
  std::size_t commutativity_elementwise_level = 0;
  AxiomFailure failure = AxiomFailure::None;
  std::size_t j = 0, k = 0, n = 0;
  std::string value;  // offending value (exact text for rationals)
  std::string message;
};

/// Checks every pair (j,k) with j,k <= table.max_level(): nonnegativity,
/// total mass 1, identity at 0, commutativity and |j-k| <= n <= j+k.
/// Rationals are compared exactly and tol is ignored for them.
///
/// Commutativity is checked independently of the canonical storage: each
/// column is run to row max_level, and g(j,k,.) reached by recursion on j is
/// compared with g(k,j,.) reached by recursion on k. Elementwise up to
/// elementwise_level, through the first four moments beyond it.
template <class T>
AxiomReport verify_axioms(const ConvolutionTable<T>& table, double tol,
                          std::size_t elementwise_level = 48);

}  // namespace hypalg
