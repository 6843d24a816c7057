#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "core/scalar.hpp"

namespace hypalg {

enum class TailRule { None, Constant, Geometric };

/// How an explicit finite coefficient list continues past its last entry.
struct TailSpec {
  TailRule rule = TailRule::None;
  Rational ratio = 1;  // geometric only, must lie in (0,1]
};

/// Limits of (a_n, b_n, c_n) implied by a closed form or a tail rule.
struct CoefficientLimits {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
};

/// Exact description of the recurrence
///   p_1 p_n = a_n p_{n+1} + b_n p_n + c_n p_{n-1}  (n >= 1),
///   p_0 = 1,  p_1(x) = (x - b_0) / a_0.
/// Values are produced on demand by index; c(0) is 0 by convention.
class RecurrenceCoefficients {
 public:
  using Generator = std::function<Rational(std::size_t)>;

  RecurrenceCoefficients(std::string name, Generator a, Generator b, Generator c,
                         std::optional<CoefficientLimits> limits);

  Rational a(std::size_t n) const { return a_(n); }
  Rational b(std::size_t n) const { return b_(n); }
  Rational c(std::size_t n) const { return n == 0 ? Rational(0) : c_(n); }

  const std::string& name() const { return name_; }
  const std::optional<CoefficientLimits>& declared_limits() const { return limits_; }

  /// Violations of a_n > 0, c_n > 0, a_0 + b_0 = 1 and a_n + b_n + c_n = 1 up to n_max.
  /// Empty when the family is a normalized recurrence (p_n(1) = 1).
  std::vector<std::string> validate(std::size_t n_max) const;
  bool normalized(std::size_t n_max) const;

 private:
  std::string name_;
  Generator a_, b_, c_;
  std::optional<CoefficientLimits> limits_;
};

/// Parameters b_n in (0,1] (n >= 1) of a symmetric hypergroup; c_n follows from
/// c_0 = 1, c_n = (c_0 + ... + c_{n-1}) / b_n.
class SymmetricParams {
 public:
  using Generator = std::function<Rational(std::size_t)>;

  SymmetricParams(std::string name, Generator b);

  Rational b(std::size_t n) const { return b_(n); }
  const std::string& name() const { return name_; }
  std::vector<std::string> validate(std::size_t n_max) const;

 private:
  std::string name_;
  Generator b_;
};

template <class T>
struct CoefficientArrays {
  std::vector<T> a, b, c;
  std::vector<T> b_complement;  // 1 - b_n, rounded from the exact value
  std::size_t size() const { return a.size(); }
};

/// Evaluates indices 0..n_max.
template <class T>
CoefficientArrays<T> materialize(const RecurrenceCoefficients& coeffs, std::size_t n_max);

template <class T>
struct SymmetricArrays {
  std::vector<T> b;  // b[0] unused (0)
  std::vector<T> c;  // c[0] = 1
  std::size_t size() const { return c.size(); }
};

template <class T>
SymmetricArrays<T> materialize(const SymmetricParams& params, std::size_t n_max);

/// A hypergroup family on the nonnegative integers.
class Family {
 public:
  explicit Family(RecurrenceCoefficients coeffs) : spec_(std::move(coeffs)) {}
  explicit Family(SymmetricParams params) : spec_(std::move(params)) {}

  bool is_symmetric() const { return std::holds_alternative<SymmetricParams>(spec_); }
  const RecurrenceCoefficients& polynomial() const;
  const SymmetricParams& symmetric() const;
  const std::string& name() const;

 private:
  std::variant<RecurrenceCoefficients, SymmetricParams> spec_;
};

using ParamMap = std::map<std::string, std::string, std::less<>>;

/// Shipped parametric families:
///   chebyshev-t, chebyshev-u, geometric-compact {q}, perturbed-chebyshev {lambda1},
///   symmetric {b} (constant b).
/// Throws Error(UnknownPreset) or Error(InvalidParameter).
Family preset(std::string_view name, const ParamMap& params = {});

std::vector<std::string> preset_names();

/// Explicit lists: a from n = 0, b from n = 0, c from n = 1. The tail rule is mandatory.
Family explicit_family(std::vector<Rational> a, std::vector<Rational> b, std::vector<Rational> c,
                       TailSpec tail);

/// Explicit symmetric parameters b_1, b_2, ... continued by the tail rule.
Family symmetric_family(std::vector<Rational> b, TailSpec tail);

}  // namespace hypalg
