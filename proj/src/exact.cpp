#include "casimir/exact.hpp"

#include <stdexcept>

namespace casimir {

ExactInteger::ExactInteger() { mpz_init(z_); }

ExactInteger::ExactInteger(long value) { mpz_init_set_si(z_, value); }

ExactInteger::ExactInteger(const ExactInteger& other) { mpz_init_set(z_, other.z_); }

ExactInteger::ExactInteger(ExactInteger&& other) noexcept {
  mpz_init(z_);
  mpz_swap(z_, other.z_);
}

ExactInteger& ExactInteger::operator=(const ExactInteger& other) {
  if (this != &other) mpz_set(z_, other.z_);
  return *this;
}

ExactInteger& ExactInteger::operator=(ExactInteger&& other) noexcept {
  if (this != &other) mpz_swap(z_, other.z_);
  return *this;
}

ExactInteger::~ExactInteger() { mpz_clear(z_); }

ExactInteger ExactInteger::factorial(unsigned long n) {
  ExactInteger r;
  mpz_fac_ui(r.z_, n);
  return r;
}

int ExactInteger::sign() const { return mpz_sgn(z_); }

int ExactInteger::cmp(const ExactInteger& other) const { return mpz_cmp(z_, other.z_); }

bool ExactInteger::fits_long() const { return mpz_fits_slong_p(z_) != 0; }

long ExactInteger::to_long() const {
  if (!fits_long()) throw std::overflow_error("ExactInteger::to_long: out of range");
  return mpz_get_si(z_);
}

std::string ExactInteger::to_string() const {
  char* s = mpz_get_str(nullptr, 10, z_);
  std::string out(s);
  void (*freefn)(void*, size_t);
  mp_get_memory_functions(nullptr, nullptr, &freefn);
  freefn(s, out.size() + 1);
  return out;
}

Real ExactInteger::to_real(mpfr_prec_t bits) const {
  Real r(bits);
  mpfr_set_z(r.raw(), z_, MPFR_RNDN);
  return r;
}

ExactInteger operator+(const ExactInteger& a, const ExactInteger& b) {
  ExactInteger r;
  mpz_add(r.z_, a.z_, b.z_);
  return r;
}

ExactInteger operator-(const ExactInteger& a, const ExactInteger& b) {
  ExactInteger r;
  mpz_sub(r.z_, a.z_, b.z_);
  return r;
}

ExactInteger operator*(const ExactInteger& a, const ExactInteger& b) {
  ExactInteger r;
  mpz_mul(r.z_, a.z_, b.z_);
  return r;
}

ExactInteger ExactInteger::operator-() const {
  ExactInteger r;
  mpz_neg(r.z_, z_);
  return r;
}

ExactRational::ExactRational() { mpq_init(q_); }

ExactRational::ExactRational(long num, long den) {
  if (den == 0) throw std::invalid_argument("ExactRational: zero denominator");
  mpq_init(q_);
  mpq_set_si(q_, num, 1);
  mpq_t d;
  mpq_init(d);
  mpq_set_si(d, den, 1);
  mpq_div(q_, q_, d);
  mpq_clear(d);
}

ExactRational::ExactRational(const ExactInteger& num, const ExactInteger& den) {
  if (den.sign() == 0) throw std::invalid_argument("ExactRational: zero denominator");
  mpq_init(q_);
  mpz_set(mpq_numref(q_), num.raw());
  mpz_set(mpq_denref(q_), den.raw());
  if (mpz_sgn(mpq_denref(q_)) < 0) {
    mpz_neg(mpq_numref(q_), mpq_numref(q_));
    mpz_neg(mpq_denref(q_), mpq_denref(q_));
  }
  mpq_canonicalize(q_);
}

ExactRational::ExactRational(const ExactRational& other) {
  mpq_init(q_);
  mpq_set(q_, other.q_);
}

ExactRational::ExactRational(ExactRational&& other) noexcept {
  mpq_init(q_);
  mpq_swap(q_, other.q_);
}

ExactRational& ExactRational::operator=(const ExactRational& other) {
  if (this != &other) mpq_set(q_, other.q_);
  return *this;
}

ExactRational& ExactRational::operator=(ExactRational&& other) noexcept {
  if (this != &other) mpq_swap(q_, other.q_);
  return *this;
}

ExactRational::~ExactRational() { mpq_clear(q_); }

int ExactRational::sign() const { return mpq_sgn(q_); }

int ExactRational::cmp(const ExactRational& other) const { return mpq_cmp(q_, other.q_); }

ExactInteger ExactRational::numerator() const {
  ExactInteger r;
  mpz_set(r.raw(), mpq_numref(q_));
  return r;
}

ExactInteger ExactRational::denominator() const {
  ExactInteger r;
  mpz_set(r.raw(), mpq_denref(q_));
  return r;
}

std::string ExactRational::to_string() const {
  std::string out = numerator().to_string();
  if (mpz_cmp_ui(mpq_denref(q_), 1) != 0) out += "/" + denominator().to_string();
  return out;
}

Real ExactRational::to_real(mpfr_prec_t bits) const {
  Real r(bits);
  mpfr_set_q(r.raw(), q_, MPFR_RNDN);
  return r;
}

ExactRational operator+(const ExactRational& a, const ExactRational& b) {
  ExactRational r;
  mpq_add(r.q_, a.q_, b.q_);
  return r;
}

ExactRational operator-(const ExactRational& a, const ExactRational& b) {
  ExactRational r;
  mpq_sub(r.q_, a.q_, b.q_);
  return r;
}

ExactRational operator*(const ExactRational& a, const ExactRational& b) {
  ExactRational r;
  mpq_mul(r.q_, a.q_, b.q_);
  return r;
}

ExactRational operator/(const ExactRational& a, const ExactRational& b) {
  if (b.sign() == 0) throw std::invalid_argument("ExactRational: division by zero");
  ExactRational r;
  mpq_div(r.q_, a.q_, b.q_);
  return r;
}

ExactRational ExactRational::operator-() const {
  ExactRational r;
  mpq_neg(r.q_, q_);
  return r;
}

}  // namespace casimir
