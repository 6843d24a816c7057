#include "core/scalar.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <system_error>

#include "core/error.hpp"

namespace hypalg {

const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::InvalidParameter: return "InvalidParameter";
    case Errc::UnknownPreset: return "UnknownPreset";
    case Errc::TableExhausted: return "TableExhausted";
    case Errc::DegenerateTable: return "DegenerateTable";
    case Errc::EigensolverFailure: return "EigensolverFailure";
    case Errc::OrderTooSmall: return "OrderTooSmall";
    case Errc::WindowTooSmall: return "WindowTooSmall";
    case Errc::NotL2: return "NotL2";
    case Errc::OutsideDual: return "OutsideDual";
  }
  return "Unknown";
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s)
    if (ch < '0' || ch > '9') return false;
  return true;
}

Rational parse_decimal(std::string_view text) {
  const std::string original(text);
  auto fail = [&]() -> Rational {
    throw Error(Errc::InvalidParameter, "not a number: '" + original + "'");
  };
  bool negative = false;
  if (!text.empty() && (text.front() == '+' || text.front() == '-')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_text = text.substr(e + 1);
    text = text.substr(0, e);
    bool exp_negative = false;
    if (!exp_text.empty() && (exp_text.front() == '+' || exp_text.front() == '-')) {
      exp_negative = exp_text.front() == '-';
      exp_text.remove_prefix(1);
    }
    if (!all_digits(exp_text) || exp_text.size() > 6) return fail();
    exponent = std::stol(std::string(exp_text));
    if (exp_negative) exponent = -exponent;
  }
  std::string_view int_part = text;
  std::string_view frac_part;
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    int_part = text.substr(0, dot);
    frac_part = text.substr(dot + 1);
  }
  if (int_part.empty() && frac_part.empty()) return fail();
  if (!int_part.empty() && !all_digits(int_part)) return fail();
  if (!frac_part.empty() && !all_digits(frac_part)) return fail();

  std::string digits = std::string(int_part) + std::string(frac_part);
  mpz_class numerator(digits.empty() ? "0" : digits, 10);
  exponent -= static_cast<long>(frac_part.size());
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  Rational value = exponent < 0 ? Rational(numerator, scale) : Rational(numerator * scale);
  value.canonicalize();
  return negative ? Rational(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t')) text.remove_suffix(1);
  if (text.empty()) throw Error(Errc::InvalidParameter, "empty number");
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Rational num = parse_decimal(text.substr(0, slash));
    Rational den = parse_decimal(text.substr(slash + 1));
    if (sgn(den) == 0) throw Error(Errc::InvalidParameter, "zero denominator in '" + std::string(text) + "'");
    Rational q = num / den;
    q.canonicalize();
    return q;
  }
  return parse_decimal(text);
}

Rational rational_from_double(double v) {
  if (!std::isfinite(v)) throw Error(Errc::InvalidParameter, "non-finite value");
  Rational q(v);
  q.canonicalize();
  return q;
}

double nearest_double(const Rational& v) {
  const int sign = sgn(v);
  if (sign == 0) return 0.0;
  mpz_class num = abs(v.get_num());
  const mpz_class& den = v.get_den();
  // Scale so the integer quotient carries 53 significant bits, or fewer in the subnormal range.
  long e = static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 2)) -
           static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 2)) - 53;
  if (e < -1074) e = -1074;
  mpz_class scaled_num = num, scaled_den = den;
  if (e < 0)
    mpz_mul_2exp(scaled_num.get_mpz_t(), num.get_mpz_t(), static_cast<unsigned long>(-e));
  else
    mpz_mul_2exp(scaled_den.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(e));
  mpz_class q, r;
  mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), scaled_num.get_mpz_t(), scaled_den.get_mpz_t());
  if (mpz_sizeinbase(q.get_mpz_t(), 2) > 53 && e > -1074) {
    // One bit too many: redo with the next exponent.
    ++e;
    mpz_mul_2exp(scaled_den.get_mpz_t(), scaled_den.get_mpz_t(), 1);
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), scaled_num.get_mpz_t(), scaled_den.get_mpz_t());
  }
  const int cmp = mpz_cmp(mpz_class(2 * r).get_mpz_t(), scaled_den.get_mpz_t());
  if (cmp > 0 || (cmp == 0 && mpz_odd_p(q.get_mpz_t()))) ++q;
  const double mag = std::ldexp(q.get_d(), static_cast<int>(e));
  return sign < 0 ? -mag : mag;
}

std::string to_text(const Rational& v) { return v.get_str(10); }

std::string to_text(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string format_g17(double v) {
  if (v == 0.0) v = 0.0;  // no "-0"
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Rational pow(const Rational& base, unsigned long exponent) {
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), exponent);
  Rational r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace hypalg
