#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <vector>

#include "core/coefficients.hpp"
#include "core/scalar.hpp"

namespace hypalg {

/// One linearization row g(j,k,.) stored densely from index lo.
template <class T>
struct Row {
  std::size_t lo = 0;
  std::vector<T> values;

  std::size_t end() const { return lo + values.size(); }
  T at(std::size_t n) const {
    return (n < lo || n >= end()) ? T(0) : values[n - lo];
  }
};

enum class TableKind { Polynomial, Symmetric };

/// Linearization coefficients eps_j * eps_k = sum_n g(j,k,n) eps_n for j,k <= max_level.
///
/// Rows are computed lazily per column and memoized behind a mutex; copies of a
/// table share the memo. Row (j,k) is always served from the canonical
/// (min, max) pair, so g(j,k,.) and g(k,j,.) are the same object.
template <class T>
class ConvolutionTable {
 public:
  static ConvolutionTable polynomial(const RecurrenceCoefficients& coeffs, std::size_t max_level);
  static ConvolutionTable symmetric(const SymmetricParams& params, std::size_t max_level);

  std::size_t max_level() const;
  TableKind kind() const;

  /// Throws Error(TableExhausted) when j or k exceeds max_level.
  const Row<T>& row(std::size_t j, std::size_t k) const;
  T at(std::size_t j, std::size_t k, std::size_t n) const { return row(j, k).at(n); }

  /// Rows (j, k) for j = 0..j_max computed by recursion on j with k fixed.
  /// Not memoized; j_max may exceed k (used for independent cross-checks).
  std::vector<Row<T>> column(std::size_t k, std::size_t j_max) const;
  /// Same rows in the same order, handed to visit one at a time; stops early
  /// when visit returns false. Only two rows are held at once.
  void visit_column(std::size_t k, std::size_t j_max,
                    const std::function<bool(std::size_t, const Row<T>&)>& visit) const;

  /// g(n,n,0), computed without touching the memo.
  T diagonal_at_zero(std::size_t n) const;

  /// Polynomial tables: coefficient arrays materialized to 2 * max_level + 2.
  const CoefficientArrays<T>& coefficients() const;
  /// Symmetric tables: b and c materialized to max_level.
  const SymmetricArrays<T>& symmetric_arrays() const;

 private:
  struct State;
  explicit ConvolutionTable(std::shared_ptr<State> state) : state_(std::move(state)) {}
  std::shared_ptr<State> state_;
};

extern template class ConvolutionTable<double>;
extern template class ConvolutionTable<Rational>;

}  // namespace hypalg
