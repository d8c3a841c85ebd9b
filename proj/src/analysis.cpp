#include "casimir/analysis.hpp"

#include <algorithm>
#include <stdexcept>

#include "casimir/exact.hpp"
#include "casimir/specfun.hpp"

namespace casimir {

ScanReport scan(BoundaryCondition bc, int d_min, int d_max, const PrecisionContext& ctx) {
  if (d_min < 1 || d_min > d_max)
    throw std::invalid_argument("scan: requires 1 <= d_min <= d_max");
  const int working =
      ctx.target_digits() + std::max(ctx.guard_digits(), guard_floor(d_max));

  ScanReport report;
  report.bc = bc;
  report.d_min = d_min;
  report.d_max = d_max;
  report.working_digits = working;

  for (int d = d_min; d <= d_max; ++d) {
    EnergyResult r = bc == BoundaryCondition::dirichlet
                         ? dirichlet_energy_at(d, ctx.target_digits(), working)
                         : neumann_energy_at(d, ctx.target_digits(), working);
    if (bc == BoundaryCondition::dirichlet) {
      if (!report.critical_dimension && d % 2 == 0 && r.sign < 0)
        report.critical_dimension = d;
      if (d <= 34) {
        int expected = d % 2 == 0 ? 1 : -1;
        if (r.sign != expected)
          report.sign_pattern_violations.push_back({d, expected, r.sign});
      } else if (d <= 110) {
        if (r.sign != -1) report.sign_pattern_violations.push_back({d, -1, r.sign});
      }
    } else {
      if (r.sign != -1) report.sign_pattern_violations.push_back({d, -1, r.sign});
    }
    report.results.push_back(std::move(r));
  }
  return report;
}

Real scaled_value(const EnergyResult& e) {
  const Real& v = e.value;
  Real mag = v.abs();
  Real one = Real::from_long(1, mag.bits());
  if (v.sign() == 0 || mag >= one)
    throw std::domain_error("scaled_value: requires 0 < |E| < 1");
  return -v / (mag * mag.log10());
}

DecimalContext::DecimalContext(int digits) : digits_(digits) {
  if (digits < 2) throw std::invalid_argument("DecimalContext: digits must be >= 2");
  // Exact products of two n-digit decimals carry 2n digits; the carrier
  // keeps enough headroom that the binary representation never perturbs the
  // decimal rounding decision.
  carrier_digits_ = 2 * digits + 24;
  carrier_bits_ = bits_for_digits(carrier_digits_);
}

Real DecimalContext::round(const Real& x) const { return round_to_decimal(x, digits_); }

Real DecimalContext::mul(const Real& a, const Real& b) const {
  return round_to_decimal(a * b, digits_);
}

Real DecimalContext::add(const Real& a, const Real& b) const {
  return round_to_decimal(a + b, digits_);
}

Real emulated_dirichlet_energy(int dimension, const DecimalContext& dec) {
  if (dimension < 1)
    throw std::invalid_argument("emulated_dirichlet_energy: dimension must be >= 1");
  const mpfr_prec_t bits = dec.carrier_bits();
  PrecisionContext carrier(dec.carrier_digits(), 0);

  Real total = Real::zero(bits);
  for (int p = 0; p < dimension; ++p) {
    Real pi = Real::pi(bits);
    Real pi_pow(bits);
    if (p % 2 == 0) {
      pi_pow = pi.pow_si(-(p + 2) / 2);
    } else {
      pi_pow = pi.pow_si((-(p + 2) - 1) / 2) * pi.sqrt();
    }
    Real t = dec.round(binomial(dimension - 1, p).to_real(bits));
    t = dec.mul(t, dec.round(Real::two_pow(-(dimension + 1), bits)));
    t = dec.mul(t, dec.round(gamma_half(HalfInteger(p + 2), carrier)));
    t = dec.mul(t, dec.round(pi_pow));
    t = dec.mul(t, dec.round(zeta_int(p + 2, carrier)));
    if ((p + dimension) % 2 != 0) t = -t;
    total = dec.add(total, t);
  }
  return total;
}

PrecisionStudyReport precision_study(int d_min, int d_max, std::vector<int> digit_settings,
                                     int reference_digits) {
  if (d_min < 1 || d_min > d_max)
    throw std::invalid_argument("precision_study: requires 1 <= d_min <= d_max");
  if (digit_settings.empty())
    throw std::invalid_argument("precision_study: digit_settings must be non-empty");
  int max_setting = *std::max_element(digit_settings.begin(), digit_settings.end());
  if (reference_digits <= max_setting + 20)
    throw std::invalid_argument(
        "precision_study: reference_digits must exceed max(digit_settings) + 20");

  PrecisionStudyReport report;
  report.d_min = d_min;
  report.d_max = d_max;
  report.reference_digits = reference_digits;
  report.digit_settings = digit_settings;

  const int ref_working = reference_digits + guard_floor(d_max);
  std::vector<EnergyResult> reference;
  for (int d = d_min; d <= d_max; ++d) {
    reference.push_back(dirichlet_energy_at(d, reference_digits, ref_working));
    report.reference_values.push_back(to_sig_digits(reference.back().value, 30));
  }

  for (int digits : digit_settings) {
    DecimalContext dec(digits);
    PrecisionStudyReport::Setting setting;
    setting.digits = digits;
    for (int d = d_min; d <= d_max; ++d) {
      Real v = emulated_dirichlet_energy(d, dec);
      const EnergyResult& ref = reference[static_cast<size_t>(d - d_min)];
      if (!setting.first_sign_error && v.sign() != ref.sign)
        setting.first_sign_error = d;
      if (!setting.first_digit_error &&
          to_sig_digits(v, 1) != to_sig_digits(ref.value, 1))
        setting.first_digit_error = d;
      setting.values.push_back(to_sig_digits(v, digits));
    }
    report.per_setting.push_back(std::move(setting));
  }
  return report;
}

}  // namespace casimir
