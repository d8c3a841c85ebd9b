#include "casimir/precision.hpp"

#include <cmath>
#include <stdexcept>

namespace casimir {

namespace {
constexpr double kLog2Of10 = 3.321928094887362;
constexpr mpfr_rnd_t R = MPFR_RNDN;
}  // namespace

mpfr_prec_t bits_for_digits(int digits) {
  if (digits < 1) throw std::invalid_argument("bits_for_digits: digits must be >= 1");
  return static_cast<mpfr_prec_t>(std::ceil(digits * kLog2Of10)) + 8;
}

PrecisionContext::PrecisionContext(int target_digits, int guard_digits)
    : target_digits_(target_digits), guard_digits_(guard_digits) {
  if (target_digits < min_target_digits)
    throw std::invalid_argument("PrecisionContext: target_digits must be >= 10");
  if (guard_digits < 0)
    throw std::invalid_argument("PrecisionContext: guard_digits must be >= 0");
}

Real::Real(mpfr_prec_t bits) {
  mpfr_init2(v_, bits);
  mpfr_set_nan(v_);
}

Real::Real(const Real& other) {
  mpfr_init2(v_, mpfr_get_prec(other.v_));
  mpfr_set(v_, other.v_, R);
}

Real::Real(Real&& other) noexcept {
  mpfr_init2(v_, MPFR_PREC_MIN);
  mpfr_swap(v_, other.v_);
}

Real& Real::operator=(const Real& other) {
  if (this != &other) {
    mpfr_set_prec(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, R);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  if (this != &other) mpfr_swap(v_, other.v_);
  return *this;
}

Real::~Real() { mpfr_clear(v_); }

Real Real::zero(mpfr_prec_t bits) {
  Real r(bits);
  mpfr_set_zero(r.v_, 1);
  return r;
}

Real Real::from_long(long value, mpfr_prec_t bits) {
  Real r(bits);
  mpfr_set_si(r.v_, value, R);
  return r;
}

Real Real::from_double(double value, mpfr_prec_t bits) {
  Real r(bits);
  mpfr_set_d(r.v_, value, R);
  return r;
}

Real Real::from_string(const std::string& text, mpfr_prec_t bits) {
  Real r(bits);
  if (mpfr_set_str(r.v_, text.c_str(), 10, R) != 0)
    throw std::invalid_argument("Real::from_string: unparsable value: " + text);
  return r;
}

Real Real::pi(mpfr_prec_t bits) {
  Real r(bits);
  mpfr_const_pi(r.v_, R);
  return r;
}

Real Real::two_pow(long exponent, mpfr_prec_t bits) {
  Real r(bits);
  mpfr_set_ui(r.v_, 1, R);
  mpfr_mul_2si(r.v_, r.v_, exponent, R);
  return r;
}

mpfr_prec_t Real::bits() const { return mpfr_get_prec(v_); }

bool Real::is_finite() const { return mpfr_number_p(v_) != 0; }

int Real::sign() const {
  if (mpfr_zero_p(v_)) return 0;
  return mpfr_sgn(v_) > 0 ? 1 : -1;
}

double Real::to_double() const { return mpfr_get_d(v_, R); }

Real Real::operator-() const {
  Real r(bits());
  mpfr_neg(r.v_, v_, R);
  return r;
}

Real Real::abs() const {
  Real r(bits());
  mpfr_abs(r.v_, v_, R);
  return r;
}

Real Real::sqrt() const {
  Real r(bits());
  mpfr_sqrt(r.v_, v_, R);
  return r;
}

Real Real::exp() const {
  Real r(bits());
  mpfr_exp(r.v_, v_, R);
  return r;
}

Real Real::ln() const {
  Real r(bits());
  mpfr_log(r.v_, v_, R);
  return r;
}

Real Real::log10() const {
  Real r(bits());
  mpfr_log10(r.v_, v_, R);
  return r;
}

Real Real::pow_si(long exponent) const {
  Real r(bits());
  mpfr_pow_si(r.v_, v_, exponent, R);
  return r;
}

int Real::cmp(const Real& other) const { return mpfr_cmp(v_, other.v_); }

namespace {
mpfr_prec_t max_bits(const Real& a, const Real& b) {
  return a.bits() > b.bits() ? a.bits() : b.bits();
}
}  // namespace

Real operator+(const Real& a, const Real& b) {
  Real r(max_bits(a, b));
  mpfr_add(r.raw(), a.raw(), b.raw(), R);
  return r;
}

Real operator-(const Real& a, const Real& b) {
  Real r(max_bits(a, b));
  mpfr_sub(r.raw(), a.raw(), b.raw(), R);
  return r;
}

Real operator*(const Real& a, const Real& b) {
  Real r(max_bits(a, b));
  mpfr_mul(r.raw(), a.raw(), b.raw(), R);
  return r;
}

Real operator/(const Real& a, const Real& b) {
  Real r(max_bits(a, b));
  mpfr_div(r.raw(), a.raw(), b.raw(), R);
  return r;
}

Real operator*(const Real& a, long b) {
  Real r(a.bits());
  mpfr_mul_si(r.raw(), a.raw(), b, R);
  return r;
}

Real operator/(const Real& a, long b) {
  Real r(a.bits());
  mpfr_div_si(r.raw(), a.raw(), b, R);
  return r;
}

Real const_pi(const PrecisionContext& ctx) { return Real::pi(ctx.working_bits()); }

namespace {

// Digit string (without sign) plus decimal exponent -> formatted decimal.
// exp10 follows the mpfr_get_str convention: value = 0.digits * 10^exp10.
std::string format_digits(const std::string& digits, long exp10, bool negative) {
  const long n = static_cast<long>(digits.size());
  std::string body;
  if (exp10 > n + 5 || exp10 < -3) {
    body = digits.substr(0, 1);
    if (n > 1) body += "." + digits.substr(1);
    body += "e" + std::to_string(exp10 - 1);
  } else if (exp10 <= 0) {
    body = "0." + std::string(static_cast<size_t>(-exp10), '0') + digits;
  } else if (exp10 < n) {
    body = digits.substr(0, static_cast<size_t>(exp10)) + "." +
           digits.substr(static_cast<size_t>(exp10));
  } else {
    body = digits + std::string(static_cast<size_t>(exp10 - n), '0');
  }
  return negative ? "-" + body : body;
}

}  // namespace

std::string to_sig_digits(const Real& x, int n) {
  if (n < 1) throw std::invalid_argument("to_sig_digits: n must be >= 1");
  if (!x.is_finite()) throw std::invalid_argument("to_sig_digits: non-finite value");
  if (x.sign() == 0) {
    if (n == 1) return "0";
    return "0." + std::string(static_cast<size_t>(n - 1), '0');
  }
  mpfr_exp_t e = 0;
  char* raw = mpfr_get_str(nullptr, &e, 10, static_cast<size_t>(n), x.raw(), MPFR_RNDN);
  if (raw == nullptr) throw std::runtime_error("to_sig_digits: conversion failed");
  std::string digits(raw);
  mpfr_free_str(raw);
  bool negative = !digits.empty() && digits[0] == '-';
  if (negative) digits.erase(0, 1);
  return format_digits(digits, static_cast<long>(e), negative);
}

Real round_to_decimal(const Real& x, int n) {
  if (n < 1) throw std::invalid_argument("round_to_decimal: n must be >= 1");
  if (!x.is_finite()) throw std::invalid_argument("round_to_decimal: non-finite value");
  if (x.sign() == 0) return x;
  mpfr_exp_t e = 0;
  char* raw = mpfr_get_str(nullptr, &e, 10, static_cast<size_t>(n), x.raw(), MPFR_RNDN);
  if (raw == nullptr) throw std::runtime_error("round_to_decimal: conversion failed");
  std::string digits(raw);
  mpfr_free_str(raw);
  // value = digits * 10^(e - n); reparse at the same carrier precision.
  std::string text = digits + "e" + std::to_string(static_cast<long>(e) - n);
  Real r(x.bits());
  mpfr_set_str(r.raw(), text.c_str(), 10, MPFR_RNDN);
  return r;
}

double approx_log10_abs(const Real& x) {
  if (x.sign() == 0) return -HUGE_VAL;
  long exp2 = 0;
  double mant = mpfr_get_d_2exp(&exp2, x.raw(), MPFR_RNDN);
  return std::log10(std::fabs(mant)) + static_cast<double>(exp2) * 0.30102999566398120;
}

}  // namespace casimir
