#pragma once

#include <gmp.h>

#include <string>

#include "casimir/precision.hpp"

namespace casimir {

// Arbitrary-size integer. Exact: no operation ever rounds.
class ExactInteger {
public:
  ExactInteger();
  ExactInteger(long value);  // NOLINT(google-explicit-constructor): literals are handy
  ExactInteger(const ExactInteger& other);
  ExactInteger(ExactInteger&& other) noexcept;
  ExactInteger& operator=(const ExactInteger& other);
  ExactInteger& operator=(ExactInteger&& other) noexcept;
  ~ExactInteger();

  static ExactInteger factorial(unsigned long n);

  int sign() const;
  int cmp(const ExactInteger& other) const;
  bool operator==(const ExactInteger& other) const { return cmp(other) == 0; }
  bool operator!=(const ExactInteger& other) const { return cmp(other) != 0; }
  bool operator<(const ExactInteger& other) const { return cmp(other) < 0; }
  bool operator>(const ExactInteger& other) const { return cmp(other) > 0; }

  bool fits_long() const;
  long to_long() const;  // requires fits_long()
  std::string to_string() const;
  Real to_real(mpfr_prec_t bits) const;

  friend ExactInteger operator+(const ExactInteger& a, const ExactInteger& b);
  friend ExactInteger operator-(const ExactInteger& a, const ExactInteger& b);
  friend ExactInteger operator*(const ExactInteger& a, const ExactInteger& b);
  ExactInteger operator-() const;

  mpz_srcptr raw() const { return z_; }
  mpz_ptr raw() { return z_; }

private:
  mpz_t z_;
};

// Arbitrary-size rational, always normalized: gcd(num, den) = 1, den > 0.
class ExactRational {
public:
  ExactRational();
  ExactRational(long num, long den = 1);
  ExactRational(const ExactInteger& num, const ExactInteger& den);
  ExactRational(const ExactRational& other);
  ExactRational(ExactRational&& other) noexcept;
  ExactRational& operator=(const ExactRational& other);
  ExactRational& operator=(ExactRational&& other) noexcept;
  ~ExactRational();

  int sign() const;
  int cmp(const ExactRational& other) const;
  bool operator==(const ExactRational& other) const { return cmp(other) == 0; }
  bool operator!=(const ExactRational& other) const { return cmp(other) != 0; }
  bool operator<(const ExactRational& other) const { return cmp(other) < 0; }
  bool operator>(const ExactRational& other) const { return cmp(other) > 0; }

  ExactInteger numerator() const;
  ExactInteger denominator() const;
  std::string to_string() const;  // "p/q", or "p" when q = 1
  Real to_real(mpfr_prec_t bits) const;

  friend ExactRational operator+(const ExactRational& a, const ExactRational& b);
  friend ExactRational operator-(const ExactRational& a, const ExactRational& b);
  friend ExactRational operator*(const ExactRational& a, const ExactRational& b);
  friend ExactRational operator/(const ExactRational& a, const ExactRational& b);
  ExactRational operator-() const;

  mpq_srcptr raw() const { return q_; }
  mpq_ptr raw() { return q_; }

private:
  mpq_t q_;
};

}  // namespace casimir
