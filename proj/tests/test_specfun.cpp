#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <vector>

#include "casimir/specfun.hpp"

using casimir::binomial;
using casimir::ExactInteger;
using casimir::ExactRational;
using casimir::gamma_half;
using casimir::HalfInteger;
using casimir::PrecisionContext;
using casimir::Real;
using casimir::zeta_int;
using casimir::zeta_int_alternating;

namespace {

Real rel_diff(const Real& a, const Real& b) { return ((a - b) / b).abs(); }

// Independent Bernoulli oracle: Akiyama-Tanigawa triangle, entirely
// different recurrence from the production code.
ExactRational bernoulli_at(int m) {
  std::vector<ExactRational> row;
  for (int j = 0; j <= m; ++j) {
    row.emplace_back(ExactInteger(1), ExactInteger(j + 1));
    for (int k = j; k >= 1; --k)
      row[k - 1] = (row[k - 1] - row[k]) * ExactRational(k);
  }
  return row[0];
}

}  // namespace

TEST_CASE("exact integer and rational basics") {
  CHECK(ExactInteger::factorial(5) == ExactInteger(120));
  CHECK((ExactInteger(7) * ExactInteger(-3)).to_long() == -21);
  ExactRational half(1, 2);
  ExactRational third(1, 3);
  CHECK((half + third).to_string() == "5/6");
  CHECK((half - half).sign() == 0);
  CHECK(ExactRational(2, -4).to_string() == "-1/2");
  CHECK(ExactRational(6, 3).to_string() == "2");
  CHECK_THROWS_AS(ExactRational(1, 0), std::invalid_argument);
}

TEST_CASE("binomial") {
  CHECK(binomial(5, 2) == ExactInteger(10));
  CHECK(binomial(41, 0) == ExactInteger(1));
  CHECK(binomial(109, 54) == binomial(108, 53) + binomial(108, 54));
  for (long n : {7L, 30L, 111L})
    for (long k : {0L, 3L, n / 2})
      CHECK(binomial(n, k) == binomial(n, n - k));
  CHECK_THROWS_AS(binomial(5, -1), std::invalid_argument);
  CHECK_THROWS_AS(binomial(5, 6), std::invalid_argument);
}

TEST_CASE("bernoulli exact values and oracle") {
  CHECK(casimir::bernoulli(2).to_string() == "1/6");
  CHECK(casimir::bernoulli(4).to_string() == "-1/30");
  CHECK(casimir::bernoulli(12).to_string() == "-691/2730");
  for (int m = 2; m <= 60; m += 2) CHECK(casimir::bernoulli(m) == bernoulli_at(m));
  CHECK_THROWS_AS(casimir::bernoulli(3), std::invalid_argument);
  CHECK_THROWS_AS(casimir::bernoulli(0), std::invalid_argument);
}

TEST_CASE("half integers") {
  CHECK_THROWS_AS(HalfInteger(0), std::invalid_argument);
  CHECK(HalfInteger(6).is_integer());
  CHECK(HalfInteger(6).integer_part() == 3);
  CHECK(!HalfInteger(5).is_integer());
}

TEST_CASE("gamma at integer and half-integer arguments") {
  PrecisionContext ctx(50, 0);
  CHECK(gamma_half(HalfInteger(2), ctx) == Real::from_long(1, 64));   // Gamma(1)
  CHECK(gamma_half(HalfInteger(10), ctx) == Real::from_long(24, 64)); // Gamma(5)=4!
  Real sqrt_pi = const_pi(ctx).sqrt();
  CHECK(rel_diff(gamma_half(HalfInteger(1), ctx), sqrt_pi) <
        Real::from_string("1e-48", 64));
  // Gamma(5/2) = (3/4) sqrt(pi)
  Real expected = sqrt_pi * 3 / 4;
  CHECK(rel_diff(gamma_half(HalfInteger(5), ctx), expected) <
        Real::from_string("1e-48", 64));
  CHECK(to_sig_digits(gamma_half(HalfInteger(5), ctx), 11) == "1.3293403882");
}

TEST_CASE("gamma recurrence up to x = 60") {
  PrecisionContext ctx(100, 0);
  Real tol = Real::from_string("1e-97", 64);
  for (long twice = 1; twice <= 120; ++twice) {
    Real lhs = gamma_half(HalfInteger(twice + 2), ctx);
    Real x = Real::from_long(twice, ctx.working_bits()) / 2;
    Real rhs = x * gamma_half(HalfInteger(twice), ctx);
    CHECK(rel_diff(lhs, rhs) < tol);
  }
}

TEST_CASE("zeta classical values") {
  PrecisionContext ctx(50, 0);
  CHECK(to_sig_digits(zeta_int(2, ctx), 50) ==
        "1.6449340668482264364724151666460251892189499012068");
  CHECK(to_sig_digits(zeta_int(3, ctx), 50) ==
        "1.2020569031595942853997381615114499907649862923405");
  Real pi = const_pi(ctx);
  CHECK(rel_diff(zeta_int(2, ctx), pi.pow_si(2) / 6) < Real::from_string("1e-48", 64));
  CHECK(rel_diff(zeta_int(4, ctx), pi.pow_si(4) / 90) < Real::from_string("1e-48", 64));
  CHECK_THROWS_AS(zeta_int(1, ctx), std::invalid_argument);
}

TEST_CASE("dual-method zeta spot checks") {
  for (int digits : {50, 100}) {
    PrecisionContext ctx(digits, 0);
    Real tol = Real::from_string("1e-" + std::to_string(digits - 1), 64);
    for (long s : {2L, 3L, 5L, 17L, 60L, 120L}) {
      Real primary = zeta_int(s, ctx);
      Real alternating = zeta_int_alternating(s, ctx);
      CHECK(rel_diff(primary, alternating) < tol);
    }
  }
}

TEST_CASE("even zeta from bernoulli") {
  PrecisionContext ctx(100, 0);
  const mpfr_prec_t bits = ctx.working_bits();
  Real tol = Real::from_string("1e-97", 64);
  Real two_pi = const_pi(ctx) * 2;
  for (long m = 1; m <= 20; ++m) {
    // zeta(2m) = (-1)^(m+1) B_2m (2 pi)^(2m) / (2 (2m)!)
    ExactRational b = casimir::bernoulli(2 * m);
    Real closed = b.to_real(bits) * two_pi.pow_si(2 * m) /
                  ExactInteger::factorial(static_cast<unsigned long>(2 * m)).to_real(bits) /
                  2;
    if (m % 2 == 0) closed = -closed;
    CHECK(rel_diff(zeta_int(2 * m, ctx), closed) < tol);
  }
}
