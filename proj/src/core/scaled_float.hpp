#pragma once

#include <cmath>
#include <cstdint>

namespace hypalg {

/// Double mantissa with a 64-bit binary exponent: m * 2^e, m in [0.5, 1) or 0.
/// Used where exact values span more than the double exponent range.
class ScaledFloat {
 public:
  ScaledFloat() = default;
  ScaledFloat(double v) { assign(v, 0); }

  static ScaledFloat from_parts(double m, std::int64_t e) {
    ScaledFloat r;
    r.assign(m, e);
    return r;
  }

  double to_double() const {
    const std::int64_t e = e_ < -4096 ? -4096 : e_ > 4096 ? 4096 : e_;
    return std::ldexp(m_, static_cast<int>(e));
  }
  bool is_zero() const { return m_ == 0.0; }

  friend ScaledFloat operator*(const ScaledFloat& a, const ScaledFloat& b) {
    ScaledFloat r;
    r.assign(a.m_ * b.m_, a.e_ + b.e_);
    return r;
  }
  friend ScaledFloat operator/(const ScaledFloat& a, const ScaledFloat& b) {
    ScaledFloat r;
    r.assign(a.m_ / b.m_, a.e_ - b.e_);
    return r;
  }
  friend ScaledFloat operator+(const ScaledFloat& a, const ScaledFloat& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const ScaledFloat& hi = a.e_ >= b.e_ ? a : b;
    const ScaledFloat& lo = a.e_ >= b.e_ ? b : a;
    const std::int64_t shift = hi.e_ - lo.e_;
    if (shift > 64) return hi;
    ScaledFloat r;
    r.assign(hi.m_ + std::ldexp(lo.m_, -static_cast<int>(shift)), hi.e_);
    return r;
  }
  friend ScaledFloat operator-(const ScaledFloat& a) {
    ScaledFloat r = a;
    r.m_ = -r.m_;
    return r;
  }
  friend ScaledFloat operator-(const ScaledFloat& a, const ScaledFloat& b) { return a + (-b); }
  ScaledFloat& operator+=(const ScaledFloat& o) { return *this = *this + o; }
  ScaledFloat& operator-=(const ScaledFloat& o) { return *this = *this - o; }
  ScaledFloat& operator*=(const ScaledFloat& o) { return *this = *this * o; }
  ScaledFloat& operator/=(const ScaledFloat& o) { return *this = *this / o; }

  friend bool operator==(const ScaledFloat& a, const ScaledFloat& b) { return a.m_ == b.m_ && a.e_ == b.e_; }
  friend bool operator<(const ScaledFloat& a, const ScaledFloat& b) {
    if (a.m_ < 0.0 || b.m_ < 0.0 || a.is_zero() || b.is_zero()) return (a - b).m_ < 0.0;
    return a.e_ != b.e_ ? a.e_ < b.e_ : a.m_ < b.m_;
  }

 private:
  void assign(double m, std::int64_t e) {
    if (m == 0.0 || !std::isfinite(m)) {
      m_ = m;
      e_ = 0;
      return;
    }
    int shift = 0;
    m_ = std::frexp(m, &shift);
    e_ = e + shift;
  }

  double m_ = 0.0;
  std::int64_t e_ = 0;
};

inline bool is_zero(const ScaledFloat& v) { return v.is_zero(); }
inline ScaledFloat abs_value(const ScaledFloat& v) { return v < ScaledFloat(0.0) ? -v : v; }

}  // namespace hypalg
