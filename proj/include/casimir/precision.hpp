#pragma once

#include <mpfr.h>

#include <string>

namespace casimir {

// Decimal significant digits -> binary mantissa bits, with a small slack so
// that decimal round-trips at the requested digit count are safe.
mpfr_prec_t bits_for_digits(int digits);

// Rounding policy. Only round-to-nearest-even is supported; the enum exists
// so the policy is visible in signatures rather than implied.
enum class Rounding { nearest_even };

// Precision request: target significant decimal digits plus guard digits of
// working headroom. Immutable; safe to share across threads.
class PrecisionContext {
public:
  static constexpr int min_target_digits = 10;

  PrecisionContext(int target_digits, int guard_digits);

  int target_digits() const { return target_digits_; }
  int guard_digits() const { return guard_digits_; }
  int working_digits() const { return target_digits_ + guard_digits_; }
  mpfr_prec_t working_bits() const { return bits_for_digits(working_digits()); }
  Rounding rounding() const { return Rounding::nearest_even; }

private:
  int target_digits_;
  int guard_digits_;
};

// Arbitrary-precision real value. Value semantics; immutable after
// construction (all operations return new values). Binary operations round
// to nearest-even at the precision of the widest operand, so mixing
// precisions never silently truncates the wider input.
class Real {
public:
  explicit Real(mpfr_prec_t bits);
  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  static Real zero(mpfr_prec_t bits);
  static Real from_long(long value, mpfr_prec_t bits);
  static Real from_double(double value, mpfr_prec_t bits);
  static Real from_string(const std::string& text, mpfr_prec_t bits);
  static Real pi(mpfr_prec_t bits);
  // Exact power of two (no rounding).
  static Real two_pow(long exponent, mpfr_prec_t bits);

  mpfr_prec_t bits() const;
  bool is_finite() const;
  int sign() const;  // -1, 0, +1
  double to_double() const;

  Real operator-() const;
  Real abs() const;
  Real sqrt() const;
  Real exp() const;
  Real ln() const;
  Real log10() const;
  Real pow_si(long exponent) const;

  int cmp(const Real& other) const;
  bool operator==(const Real& other) const { return cmp(other) == 0; }
  bool operator!=(const Real& other) const { return cmp(other) != 0; }
  bool operator<(const Real& other) const { return cmp(other) < 0; }
  bool operator<=(const Real& other) const { return cmp(other) <= 0; }
  bool operator>(const Real& other) const { return cmp(other) > 0; }
  bool operator>=(const Real& other) const { return cmp(other) >= 0; }

  friend Real operator+(const Real& a, const Real& b);
  friend Real operator-(const Real& a, const Real& b);
  friend Real operator*(const Real& a, const Real& b);
  friend Real operator/(const Real& a, const Real& b);
  friend Real operator*(const Real& a, long b);
  friend Real operator/(const Real& a, long b);

  mpfr_srcptr raw() const { return v_; }
  mpfr_ptr raw() { return v_; }

private:
  mpfr_t v_;
};

// pi at the context's working precision.
Real const_pi(const PrecisionContext& ctx);

// Decimal string with exactly n significant digits, round-to-nearest-even.
// Fixed-point notation when the exponent is small, otherwise scientific with
// an 'e' marker; '.' is always the decimal separator. Rejects non-finite x.
std::string to_sig_digits(const Real& x, int n);

// Round x to n significant decimal digits (nearest-even) and return the
// result on the same binary carrier precision as x. Building block for the
// study that emulates low-precision decimal arithmetic.
Real round_to_decimal(const Real& x, int n);

// Cheap log10(|x|) estimate via the binary exponent; -inf for zero. Used for
// cancellation diagnostics where double accuracy is plenty.
double approx_log10_abs(const Real& x);

}  // namespace casimir
