#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <vector>

#include "casimir/analysis.hpp"
#include "casimir/energy.hpp"
#include "casimir/precision.hpp"

using casimir::BoundaryCondition;
using casimir::DecimalContext;
using casimir::dirichlet_energy;
using casimir::emulated_dirichlet_energy;
using casimir::EnergyResult;
using casimir::precision_study;
using casimir::PrecisionContext;
using casimir::PrecisionStudyReport;
using casimir::Real;
using casimir::scaled_value;
using casimir::scan;
using casimir::ScanReport;

namespace {
const BoundaryCondition Di = BoundaryCondition::dirichlet;
const BoundaryCondition Ne = BoundaryCondition::neumann;

EnergyResult fake_result(const std::string& value) {
  Real v = Real::from_string(value, 128);
  return EnergyResult{1,          Di, v, v.sign() >= 0 ? 1 : -1, v.abs(), 0.0,
                      PrecisionContext(30, 0)};
}
}

TEST_CASE("dirichlet scan finds the first negative even dimension at 36") {
  ScanReport r = scan(Di, 1, 40, PrecisionContext(30, 0));
  CHECK(r.results.size() == 40);
  CHECK(r.results.front().dimension == 1);
  CHECK(r.results.back().dimension == 40);
  CHECK(r.working_digits == 60);  // 30 target + floor(40) = 30 guard
  for (const EnergyResult& e : r.results)
    CHECK(e.context.working_digits() == r.working_digits);
  CHECK(r.sign_pattern_violations.empty());
  REQUIRE(r.critical_dimension.has_value());
  CHECK(*r.critical_dimension == 36);
}

TEST_CASE("no critical dimension below 35") {
  ScanReport r = scan(Di, 1, 34, PrecisionContext(30, 0));
  CHECK(r.sign_pattern_violations.empty());
  CHECK(!r.critical_dimension.has_value());
}

TEST_CASE("neumann scan is negative and monotone decreasing") {
  ScanReport r = scan(Ne, 1, 6, PrecisionContext(30, 0));
  CHECK(r.sign_pattern_violations.empty());
  CHECK(!r.critical_dimension.has_value());
  for (size_t i = 0; i < r.results.size(); ++i) {
    CHECK(r.results[i].sign == -1);
    if (i > 0) CHECK(r.results[i].value < r.results[i - 1].value);
  }
}

TEST_CASE("scan argument validation") {
  PrecisionContext ctx(30, 0);
  CHECK_THROWS_AS(scan(Di, 0, 5, ctx), std::invalid_argument);
  CHECK_THROWS_AS(scan(Di, 5, 3, ctx), std::invalid_argument);
}

TEST_CASE("scaled value on hand-picked magnitudes") {
  Real tol = Real::from_string("1e-30", 64);
  // E = -0.1: -E/(|E| log10|E|) = 0.1/(0.1 * -1) = -1
  CHECK((scaled_value(fake_result("-0.1")) - Real::from_long(-1, 128)).abs() < tol);
  // E = +0.01: -0.01/(0.01 * -2) = +0.5
  CHECK((scaled_value(fake_result("0.01")) - Real::from_string("0.5", 128)).abs() < tol);
  // sign is preserved for 0 < |E| < 1
  PrecisionContext ctx(30, 0);
  for (int d : {3, 6}) {
    EnergyResult e = dirichlet_energy(d, ctx);
    CHECK(scaled_value(e).sign() == e.sign);
  }
  CHECK_THROWS_AS(scaled_value(fake_result("0")), std::domain_error);
  CHECK_THROWS_AS(scaled_value(fake_result("1.5")), std::domain_error);
  CHECK_THROWS_AS(scaled_value(fake_result("1")), std::domain_error);
}

TEST_CASE("decimal context rounds in base ten, not base two") {
  DecimalContext dec(3);
  CHECK(dec.digits() == 3);
  CHECK(dec.carrier_digits() == 30);
  const mpfr_prec_t bits = dec.carrier_bits();
  CHECK(dec.round(Real::pi(bits)).cmp(Real::from_string("3.14", bits)) == 0);
  Real a = Real::from_string("1.23", bits);
  Real b = Real::from_string("4.56", bits);
  // 1.23 * 4.56 = 5.6088 -> 5.61
  CHECK(dec.mul(a, b).cmp(Real::from_string("5.61", bits)) == 0);
  // 1.23 + 4.56 = 5.79 (exact, no rounding needed)
  CHECK(dec.add(a, b).cmp(Real::from_string("5.79", bits)) == 0);
  CHECK_THROWS_AS(DecimalContext(1), std::invalid_argument);
}

TEST_CASE("emulated energy converges to the closed form when digits are ample") {
  PrecisionContext ref_ctx(40, 0);
  Real anchor = -Real::pi(ref_ctx.working_bits()) / 24;
  Real e16 = emulated_dirichlet_energy(1, DecimalContext(16));
  CHECK(((e16 - anchor) / anchor).abs() < Real::from_string("1e-14", 64));
  Real e30 = emulated_dirichlet_energy(1, DecimalContext(30));
  CHECK(((e30 - anchor) / anchor).abs() < Real::from_string("1e-25", 64));

  Real ref20 = dirichlet_energy(20, ref_ctx).value;
  CHECK(to_sig_digits(emulated_dirichlet_energy(20, DecimalContext(24)), 4) ==
        to_sig_digits(ref20, 4));
  CHECK(to_sig_digits(emulated_dirichlet_energy(20, DecimalContext(50)), 4) ==
        to_sig_digits(ref20, 4));
  CHECK_THROWS_AS(emulated_dirichlet_energy(0, DecimalContext(16)), std::invalid_argument);
}

TEST_CASE("sixteen digit arithmetic breaks down between D=40 and D=60") {
  PrecisionStudyReport r = precision_study(40, 60, {16}, 100);
  CHECK(r.d_min == 40);
  CHECK(r.d_max == 60);
  CHECK(r.reference_digits == 100);
  REQUIRE(r.per_setting.size() == 1);
  const auto& s = r.per_setting.front();
  CHECK(s.digits == 16);
  CHECK(s.values.size() == 21);
  CHECK(r.reference_values.size() == 21);
  REQUIRE(s.first_sign_error.has_value());
  CHECK(*s.first_sign_error >= 40);
  CHECK(*s.first_sign_error <= 60);
  REQUIRE(s.first_digit_error.has_value());
  CHECK(*s.first_digit_error <= *s.first_sign_error);
}

TEST_CASE("study argument validation") {
  CHECK_THROWS_AS(precision_study(0, 5, {16}, 100), std::invalid_argument);
  CHECK_THROWS_AS(precision_study(5, 3, {16}, 100), std::invalid_argument);
  CHECK_THROWS_AS(precision_study(1, 5, {}, 100), std::invalid_argument);
  // reference must clear the largest setting by more than 20 digits
  CHECK_THROWS_AS(precision_study(1, 5, {16}, 36), std::invalid_argument);
}
