#include "core/table.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <mutex>
#include <string>

#include "core/error.hpp"
#include "core/scaled_float.hpp"

namespace hypalg {

template <class T>
struct ConvolutionTable<T>::State {
  TableKind kind;
  std::size_t max_level;
  CoefficientArrays<T> poly;
  SymmetricArrays<T> sym;
  // Float tables only: the coefficients with an unbounded exponent, for g(n,n,0).
  CoefficientArrays<ScaledFloat> wide;

  mutable std::mutex mutex;
  mutable std::map<std::size_t, std::deque<Row<T>>> columns;
};

namespace {

template <class T>
void trim_zeros(Row<T>& row) {
  std::size_t first = 0;
  while (first < row.values.size() && is_zero(row.values[first])) ++first;
  std::size_t last = row.values.size();
  while (last > first && is_zero(row.values[last - 1])) --last;
  if (first == last) {
    row.values.clear();
    return;
  }
  row.values = std::vector<T>(row.values.begin() + static_cast<std::ptrdiff_t>(first),
                              row.values.begin() + static_cast<std::ptrdiff_t>(last));
  row.lo += first;
}

// b_n - b_j, taken from whichever representation carries the difference accurately.
template <class T>
T b_difference(const CoefficientArrays<T>& cf, std::size_t n, std::size_t j) {
  if constexpr (std::is_same_v<T, Rational>) return T(cf.b[n] - cf.b[j]);
  if (abs_value(cf.b_complement[n]) + abs_value(cf.b_complement[j]) < abs_value(cf.b[n]) + abs_value(cf.b[j]))
    return T(cf.b_complement[j] - cf.b_complement[n]);
  return T(cf.b[n] - cf.b[j]);
}

// row_{j+1} = ((p_1 - b_j) row_j - c_j row_{j-1}) / a_j, with p_1 p_0 = p_1.
template <class T>
Row<T> next_row(const Row<T>& current, const Row<T>& previous, std::size_t j,
                const CoefficientArrays<T>& cf) {
  Row<T> out;
  out.lo = current.lo == 0 ? 0 : current.lo - 1;
  std::size_t end = current.end() + 1;
  if (!previous.values.empty()) {
    out.lo = std::min(out.lo, previous.lo);
    end = std::max(end, previous.end());
  }
  out.values.assign(end - out.lo, T(0));
  for (std::size_t i = 0; i < current.values.size(); ++i) {
    const std::size_t n = current.lo + i;
    const T& v = current.values[i];
    if (is_zero(v)) continue;
    if (n + 1 >= cf.size())
      throw Error(Errc::TableExhausted, "recurrence coefficients exhausted at n=" + std::to_string(n + 1));
    if (n == 0) {
      // p_1 p_0 = p_1
      out.values[1 - out.lo] += v;
      out.values[0 - out.lo] -= v * cf.b[j];
      continue;
    }
    out.values[n + 1 - out.lo] += v * cf.a[n];
    const T d = b_difference(cf, n, j);
    if (!is_zero(d)) out.values[n - out.lo] += v * d;
    out.values[n - 1 - out.lo] += v * cf.c[n];
  }
  if (!is_zero(cf.c[j])) {
    for (std::size_t i = 0; i < previous.values.size(); ++i) {
      const std::size_t n = previous.lo + i;
      out.values[n - out.lo] -= cf.c[j] * previous.values[i];
    }
  }
  const T& aj = cf.a[j];
  for (auto& v : out.values) v /= aj;
  trim_zeros(out);
  return out;
}

template <class T>
Row<T> first_row(std::size_t k, const CoefficientArrays<T>& cf) {
  if (k == 0) return Row<T>{1, {T(1)}};
  Row<T> r{k - 1, {cf.c[k], cf.b[k], cf.a[k]}};
  trim_zeros(r);
  return r;
}

template <class T>
Row<T> symmetric_row(std::size_t j, std::size_t k, const SymmetricArrays<T>& sym) {
  if (j != k) return Row<T>{std::max(j, k), {T(1)}};
  if (k == 0) return Row<T>{0, {T(1)}};
  Row<T> r;
  r.lo = 0;
  r.values.reserve(k + 1);
  for (std::size_t i = 0; i < k; ++i) r.values.push_back(sym.c[i] / sym.c[k]);
  r.values.push_back(T(1) - sym.b[k]);
  return r;
}

ScaledFloat scaled(const Rational& v) {
  if (sgn(v) == 0) return ScaledFloat(0.0);
  const long shift = static_cast<long>(mpz_sizeinbase(v.get_den_mpz_t(), 2)) -
                     static_cast<long>(mpz_sizeinbase(v.get_num_mpz_t(), 2));
  Rational r = v;
  if (shift > 0)
    mpq_mul_2exp(r.get_mpq_t(), v.get_mpq_t(), static_cast<unsigned long>(shift));
  else
    mpq_div_2exp(r.get_mpq_t(), v.get_mpq_t(), static_cast<unsigned long>(-shift));
  return ScaledFloat::from_parts(to_double(r), -shift);
}

CoefficientArrays<ScaledFloat> scaled_arrays(const RecurrenceCoefficients& coeffs, std::size_t n_max) {
  CoefficientArrays<ScaledFloat> out;
  for (std::size_t n = 0; n <= n_max; ++n) {
    out.a.push_back(scaled(coeffs.a(n)));
    const Rational b = coeffs.b(n);
    out.b.push_back(scaled(b));
    out.b_complement.push_back(scaled(Rational(1 - b)));
    out.c.push_back(scaled(coeffs.c(n)));
  }
  return out;
}

template <class T>
T diagonal_from(const CoefficientArrays<T>& cf, std::size_t n) {
  if (n == 0) return T(1);
  Row<T> previous{n, {T(1)}};
  Row<T> current = first_row(n, cf);
  for (std::size_t j = 1; j < n; ++j) {
    Row<T> next = next_row(current, previous, j, cf);
    previous = std::move(current);
    current = std::move(next);
  }
  return current.at(0);
}

}  // namespace

template <class T>
ConvolutionTable<T> ConvolutionTable<T>::polynomial(const RecurrenceCoefficients& coeffs,
                                                    std::size_t max_level) {
  auto state = std::make_shared<State>();
  state->kind = TableKind::Polynomial;
  state->max_level = max_level;
  state->poly = materialize<T>(coeffs, 2 * max_level + 2);
  for (std::size_t n = 0; n < state->poly.size(); ++n) {
    if (sgn(coeffs.a(n)) == 0)
      throw Error(Errc::InvalidParameter, "a_n = 0 at n=" + std::to_string(n) + " (division by a_n)");
  }
  if constexpr (std::is_same_v<T, double>) state->wide = scaled_arrays(coeffs, 2 * max_level + 2);
  return ConvolutionTable(std::move(state));
}

template <class T>
ConvolutionTable<T> ConvolutionTable<T>::symmetric(const SymmetricParams& params,
                                                   std::size_t max_level) {
  auto state = std::make_shared<State>();
  state->kind = TableKind::Symmetric;
  state->max_level = max_level;
  state->sym = materialize<T>(params, max_level);
  return ConvolutionTable(std::move(state));
}

template <class T>
std::size_t ConvolutionTable<T>::max_level() const {
  return state_->max_level;
}

template <class T>
TableKind ConvolutionTable<T>::kind() const {
  return state_->kind;
}

template <class T>
const CoefficientArrays<T>& ConvolutionTable<T>::coefficients() const {
  if (state_->kind != TableKind::Polynomial)
    throw Error(Errc::InvalidParameter, "symmetric table has no recurrence coefficients");
  return state_->poly;
}

template <class T>
const SymmetricArrays<T>& ConvolutionTable<T>::symmetric_arrays() const {
  if (state_->kind != TableKind::Symmetric)
    throw Error(Errc::InvalidParameter, "polynomial table has no symmetric parameters");
  return state_->sym;
}

template <class T>
void ConvolutionTable<T>::visit_column(std::size_t k, std::size_t j_max,
                                       const std::function<bool(std::size_t, const Row<T>&)>& visit) const {
  const State& s = *state_;
  if (s.kind == TableKind::Symmetric) {
    if (std::max(k, j_max) > s.max_level)
      throw Error(Errc::TableExhausted, "symmetric parameters materialized to " +
                                            std::to_string(s.max_level));
    for (std::size_t j = 0; j <= j_max; ++j) {
      if (!visit(j, symmetric_row(j, k, s.sym))) return;
    }
    return;
  }
  if (k + j_max + 1 >= s.poly.size())
    throw Error(Errc::TableExhausted, "column " + std::to_string(k) + " to row " +
                                          std::to_string(j_max) + " exceeds the coefficient range");
  Row<T> previous{k, {T(1)}};
  if (!visit(0, previous) || j_max == 0) return;
  Row<T> current = first_row(k, s.poly);
  for (std::size_t j = 1;; ++j) {
    if (!visit(j, current) || j == j_max) return;
    Row<T> next = next_row(current, previous, j, s.poly);
    previous = std::move(current);
    current = std::move(next);
  }
}

template <class T>
std::vector<Row<T>> ConvolutionTable<T>::column(std::size_t k, std::size_t j_max) const {
  std::vector<Row<T>> rows;
  rows.reserve(j_max + 1);
  visit_column(k, j_max, [&rows](std::size_t, const Row<T>& r) {
    rows.push_back(r);
    return true;
  });
  return rows;
}

template <class T>
T ConvolutionTable<T>::diagonal_at_zero(std::size_t n) const {
  if (n > state_->max_level)
    throw Error(Errc::TableExhausted, "g(n,n,0) requested beyond max_level at n=" + std::to_string(n));
  if (state_->kind == TableKind::Symmetric) return symmetric_row(n, n, state_->sym).at(0);
  // Rows of compact-type families span more than the double exponent range
  // even when g(n,n,0) itself does not, so float tables recurse in ScaledFloat.
  if constexpr (std::is_same_v<T, double>)
    return diagonal_from(state_->wide, n).to_double();
  else
    return diagonal_from(state_->poly, n);
}

template <class T>
const Row<T>& ConvolutionTable<T>::row(std::size_t j, std::size_t k) const {
  const State& s = *state_;
  if (j > k) std::swap(j, k);
  if (k > s.max_level)
    throw Error(Errc::TableExhausted, "row (" + std::to_string(j) + "," + std::to_string(k) +
                                          ") beyond max_level " + std::to_string(s.max_level));
  std::lock_guard<std::mutex> lock(s.mutex);
  auto& col = s.columns[k];
  if (col.empty()) {
    if (s.kind == TableKind::Symmetric) {
      for (std::size_t i = 0; i <= k; ++i) col.push_back(symmetric_row(i, k, s.sym));
    } else {
      col.push_back(Row<T>{k, {T(1)}});
      col.push_back(first_row(k, s.poly));
    }
  }
  while (col.size() <= j) {
    const std::size_t last = col.size() - 1;
    col.push_back(next_row(col[last], col[last - 1], last, s.poly));
  }
  return col[j];
}

template class ConvolutionTable<double>;
template class ConvolutionTable<Rational>;

}  // namespace hypalg
