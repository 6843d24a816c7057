#include "core/algebra.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "core/error.hpp"

namespace hypalg {

namespace {

std::string text_of(double v) { return format_g17(v); }
std::string text_of(const Rational& v) { return to_text(v); }

template <class T>
void require_haar(const HaarWeights<T>& haar, std::size_t n, const char* what) {
  if (n >= haar.size())
    throw Error(Errc::TableExhausted, std::string(what) + ": Haar weights end at " +
                                          std::to_string(haar.size()) + ", need index " +
                                          std::to_string(n));
}

}  // namespace

template <class T>
HaarWeights<T> haar_from_table(const ConvolutionTable<T>& table, std::size_t n_max) {
  HaarWeights<T> out;
  out.h.reserve(n_max + 1);
  out.h.push_back(T(1));
  for (std::size_t n = 1; n <= n_max; ++n) {
    T g = table.diagonal_at_zero(n);
    if (!(g > T(0)))
      throw Error(Errc::DegenerateTable, "g(n,n,0) = " + text_of(g) + " at n=" + std::to_string(n));
    out.h.push_back(T(1) / g);
  }
  return out;
}

template <class T>
HaarWeights<T> haar_from_coefficients(const RecurrenceCoefficients& coeffs, std::size_t n_max) {
  HaarWeights<T> out;
  out.h.reserve(n_max + 1);
  out.h.push_back(T(1));
  // Accumulated exactly, so the float view does not drift over long products.
  Rational h = 1;
  for (std::size_t n = 1; n <= n_max; ++n) {
    Rational cn = coeffs.c(n);
    if (sgn(cn) == 0) throw Error(Errc::DegenerateTable, "c_n = 0 at n=" + std::to_string(n));
    if (n >= 2) h *= coeffs.a(n - 1);
    h /= cn;
    out.h.push_back(convert<T>(h));
  }
  return out;
}

template <class T>
HaarWeights<T> haar_symmetric(const SymmetricParams& params, std::size_t n_max) {
  SymmetricArrays<T> arrays = materialize<T>(params, n_max);
  return HaarWeights<T>{std::move(arrays.c)};
}

template <class T>
SequenceMeasure<T> convolve(const SequenceMeasure<T>& f, const SequenceMeasure<T>& g,
                            const ConvolutionTable<T>& table, const HaarWeights<T>& haar) {
  SequenceMeasure<T> out;
  if (f.size() == 0 || g.size() == 0) return out;
  const std::size_t span = std::max(f.size(), g.size());
  if (span - 1 > table.max_level())
    throw Error(Errc::TableExhausted, "convolution support " + std::to_string(span - 1) +
                                          " exceeds max_level " + std::to_string(table.max_level()));
  const std::size_t result_size = f.size() + g.size() - 1;
  require_haar(haar, result_size - 1, "convolve");
  out.density.assign(result_size, T(0));
  for (std::size_t j = 0; j < span; ++j) {
    for (std::size_t k = j; k < span; ++k) {
      T weight = j == k ? T(f.at(j) * g.at(k)) : T(f.at(j) * g.at(k) + f.at(k) * g.at(j));
      if (weight == T(0)) continue;
      weight *= haar[j] * haar[k];
      const Row<T>& r = table.row(j, k);
      for (std::size_t i = 0; i < r.values.size(); ++i) out.density[r.lo + i] += weight * r.values[i];
    }
  }
  for (std::size_t n = 0; n < result_size; ++n) out.density[n] /= haar[n];
  return out;
}

template <class T>
SequenceMeasure<T> translate(std::size_t x, const SequenceMeasure<T>& f,
                             const ConvolutionTable<T>& table) {
  SequenceMeasure<T> out;
  if (f.size() == 0) return out;
  const std::size_t result_size = f.size() + x;
  if (result_size - 1 > table.max_level())
    throw Error(Errc::TableExhausted, "translation by " + std::to_string(x) + " of support " +
                                          std::to_string(f.size() - 1) + " exceeds max_level " +
                                          std::to_string(table.max_level()));
  out.density.assign(result_size, T(0));
  for (std::size_t y = 0; y < result_size; ++y) {
    const Row<T>& r = table.row(x, y);
    T sum(0);
    for (std::size_t i = 0; i < r.values.size(); ++i) {
      const std::size_t t = r.lo + i;
      if (t >= f.size()) break;
      sum += f.density[t] * r.values[i];
    }
    out.density[y] = sum;
  }
  return out;
}

template <class T>
T pairing(const SequenceMeasure<T>& f, const SequenceMeasure<T>& g, const HaarWeights<T>& haar) {
  const std::size_t n_end = std::min(f.size(), g.size());
  if (n_end > 0) require_haar(haar, n_end - 1, "pairing");
  T sum(0);
  for (std::size_t n = 0; n < n_end; ++n) sum += f.density[n] * g.density[n] * haar[n];
  return sum;
}

template <class T>
T l1_norm(const SequenceMeasure<T>& f, const HaarWeights<T>& haar) {
  if (f.size() > 0) require_haar(haar, f.size() - 1, "l1_norm");
  T sum(0);
  for (std::size_t n = 0; n < f.size(); ++n) sum += abs_value(f.density[n]) * haar[n];
  return sum;
}

const char* axiom_failure_name(AxiomFailure kind) {
  switch (kind) {
    case AxiomFailure::None: return "none";
    case AxiomFailure::Negative: return "negative-coefficient";
    case AxiomFailure::Mass: return "total-mass";
    case AxiomFailure::Commutativity: return "commutativity";
    case AxiomFailure::Identity: return "identity";
    case AxiomFailure::Support: return "support-bounds";
  }
  return "unknown";
}

namespace {

constexpr std::size_t kMoments = 4;

template <class T>
std::array<T, kMoments> moments(const Row<T>& r) {
  std::array<T, kMoments> m;
  m.fill(T(0));
  for (std::size_t i = 0; i < r.values.size(); ++i) {
    T weight = r.values[i];
    const T n = T(static_cast<long>(r.lo + i));
    for (std::size_t p = 0; p < kMoments; ++p) {
      m[p] += weight;
      weight *= n;
    }
  }
  return m;
}

bool near(double a, double b, double tol) { return std::fabs(a - b) <= tol; }
bool near(const Rational& a, const Rational& b, double) { return a == b; }

template <class T>
struct AxiomScanner {
  double tol;
  AxiomReport& report;

  void fail(AxiomFailure kind, std::size_t j, std::size_t k, std::size_t n, const T& value,
            const std::string& detail) {
    report.passed = false;
    report.failure = kind;
    report.j = j;
    report.k = k;
    report.n = n;
    report.value = text_of(value);
    std::ostringstream os;
    os << axiom_failure_name(kind) << " at (j,k,n) = (" << j << "," << k << "," << n
       << "): " << detail << " = " << report.value;
    report.message = os.str();
  }

  // Row (j,k) as reached from column k.
  bool check_row(std::size_t j, std::size_t k, const Row<T>& r) {
    const double exact_tol = std::is_same_v<T, Rational> ? 0.0 : tol;
    if (j == 0 || k == 0) {
      const std::size_t expect = j + k;
      for (std::size_t i = 0; i < r.values.size(); ++i) {
        const std::size_t n = r.lo + i;
        T deviation = r.values[i] - (n == expect ? T(1) : T(0));
        if (!within(deviation, exact_tol)) {
          fail(AxiomFailure::Identity, j, k, n, r.values[i], "g(j,k,n) with j or k = 0");
          return false;
        }
      }
      if (r.at(expect) == T(0)) {
        fail(AxiomFailure::Identity, j, k, expect, T(0), "missing identity mass");
        return false;
      }
    }
    T mass(0);
    const std::size_t lo = j > k ? j - k : k - j;
    const std::size_t hi = j + k;
    for (std::size_t i = 0; i < r.values.size(); ++i) {
      const std::size_t n = r.lo + i;
      const T& v = r.values[i];
      if (is_negative_beyond(v, exact_tol)) {
        fail(AxiomFailure::Negative, j, k, n, v, "g(j,k,n)");
        return false;
      }
      if ((n < lo || n > hi) && !within(v, exact_tol)) {
        fail(AxiomFailure::Support, j, k, n, v, "g(j,k,n) outside |j-k| <= n <= j+k");
        return false;
      }
      mass += v;
    }
    if (!within(T(mass - T(1)), exact_tol)) {
      fail(AxiomFailure::Mass, j, k, 0, mass, "sum_n g(j,k,n)");
      return false;
    }
    return true;
  }
};

}  // namespace

template <class T>
AxiomReport verify_axioms(const ConvolutionTable<T>& table, double tol,
                          std::size_t elementwise_level) {
  AxiomReport report;
  const std::size_t level = table.max_level();
  report.level = level;
  const std::size_t elementwise = std::min(level, elementwise_level);
  report.commutativity_elementwise_level = elementwise;
  AxiomScanner<T> scan{tol, report};

  const std::size_t dim = level + 1;
  std::vector<std::array<T, kMoments>> fingerprints(dim * dim);
  std::vector<Row<T>> small((elementwise + 1) * (elementwise + 1));

  for (std::size_t k = 0; k <= level; ++k) {
    bool ok = true;
    table.visit_column(k, level, [&](std::size_t j, const Row<T>& row) {
      ++report.pairs_checked;
      if (!scan.check_row(j, k, row)) return ok = false;
      fingerprints[j * dim + k] = moments(row);
      if (j <= elementwise && k <= elementwise) small[j * (elementwise + 1) + k] = row;
      return true;
    });
    if (!ok) return report;
  }

  for (std::size_t j = 0; j <= level; ++j) {
    for (std::size_t k = j + 1; k <= level; ++k) {
      if (j <= elementwise && k <= elementwise) {
        const Row<T>& a = small[j * (elementwise + 1) + k];
        const Row<T>& b = small[k * (elementwise + 1) + j];
        const std::size_t lo = std::min(a.lo, b.lo);
        const std::size_t hi = std::max(a.end(), b.end());
        for (std::size_t n = lo; n < hi; ++n) {
          if (!near(a.at(n), b.at(n), tol)) {
            scan.fail(AxiomFailure::Commutativity, j, k, n, T(a.at(n) - b.at(n)),
                      "g(j,k,n) - g(k,j,n)");
            return report;
          }
        }
        continue;
      }
      const auto& a = fingerprints[j * dim + k];
      const auto& b = fingerprints[k * dim + j];
      double scale = 1.0;
      for (std::size_t p = 0; p < kMoments; ++p) {
        if (!near(a[p], b[p], tol * scale)) {
          scan.fail(AxiomFailure::Commutativity, j, k, p, T(a[p] - b[p]),
                    "moment difference of order " + std::to_string(p));
          return report;
        }
        scale *= static_cast<double>(j + k + 1);
      }
    }
  }
  return report;
}

#define HYPALG_INSTANTIATE(T)                                                                   \
  template HaarWeights<T> haar_from_table<T>(const ConvolutionTable<T>&, std::size_t);         \
  template HaarWeights<T> haar_from_coefficients<T>(const RecurrenceCoefficients&, std::size_t); \
  template HaarWeights<T> haar_symmetric<T>(const SymmetricParams&, std::size_t);              \
  template SequenceMeasure<T> convolve<T>(const SequenceMeasure<T>&, const SequenceMeasure<T>&, \
                                          const ConvolutionTable<T>&, const HaarWeights<T>&);   \
  template SequenceMeasure<T> translate<T>(std::size_t, const SequenceMeasure<T>&,             \
                                           const ConvolutionTable<T>&);                         \
  template T pairing<T>(const SequenceMeasure<T>&, const SequenceMeasure<T>&,                   \
                        const HaarWeights<T>&);                                                 \
  template T l1_norm<T>(const SequenceMeasure<T>&, const HaarWeights<T>&);                      \
  template AxiomReport verify_axioms<T>(const ConvolutionTable<T>&, double, std::size_t);

HYPALG_INSTANTIATE(double)
HYPALG_INSTANTIATE(Rational)

#undef HYPALG_INSTANTIATE

}  // namespace hypalg
