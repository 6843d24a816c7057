#pragma once

#include <gmpxx.h>

#include <cmath>
#include <string>
#include <string_view>

namespace hypalg {

using Rational = mpq_class;

enum class Backend { Float, Rational };

/// Parses "3", "-0.25", "1.5e-3" or "p/q" exactly. Throws Error(InvalidParameter).
Rational parse_rational(std::string_view text);

/// Exact rational value of a finite double.
Rational rational_from_double(double v);

/// Canonical text form: "p/q" or "p" when the denominator is 1.
std::string to_text(const Rational& v);

/// Shortest round-trip decimal for doubles, "%.17g" is used for CSV instead.
std::string to_text(double v);

std::string format_g17(double v);

Rational pow(const Rational& base, unsigned long exponent);

inline double to_double(double v) { return v; }
/// Nearest double (ties to even); mpq_get_d truncates instead.
double nearest_double(const Rational& v);
inline double to_double(const Rational& v) { return nearest_double(v); }

template <class T>
T convert(const Rational& v);

template <>
inline double convert<double>(const Rational& v) {
  return nearest_double(v);
}

template <>
inline Rational convert<Rational>(const Rational& v) {
  return v;
}

inline bool is_zero(double v) { return v == 0.0; }
inline bool is_zero(const Rational& v) { return sgn(v) == 0; }
inline double abs_value(double v) { return std::fabs(v); }
inline Rational abs_value(const Rational& v) { return abs(v); }

/// Whether |v| <= tol; exact comparison against zero for rationals when tol == 0.
inline bool within(double v, double tol) { return std::fabs(v) <= tol; }
inline bool within(const Rational& v, double tol) {
  return tol == 0.0 ? sgn(v) == 0 : std::fabs(v.get_d()) <= tol;
}

inline bool is_negative_beyond(double v, double tol) { return v < -tol; }
inline bool is_negative_beyond(const Rational& v, double tol) {
  return tol == 0.0 ? sgn(v) < 0 : v.get_d() < -tol;
}

}  // namespace hypalg
