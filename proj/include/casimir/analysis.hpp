#pragma once

#include <optional>
#include <string>
#include <vector>

#include "casimir/energy.hpp"
#include "casimir/precision.hpp"

namespace casimir {

// Dimension-range scan. Every dimension in [d_min, d_max] appears exactly
// once, ascending. critical_dimension (Dirichlet scans only) is the smallest
// even D in range whose energy is negative. The expected sign pattern is
// (-1)^D through D=34 and negative for 35..110 (Dirichlet), negative
// everywhere (Neumann); dimensions above 110 are outside the established
// Dirichlet pattern and are not judged.
struct ScanReport {
  struct SignViolation {
    int dimension;
    int expected;  // +1 / -1
    int actual;
  };
  BoundaryCondition bc;
  int d_min = 0;
  int d_max = 0;
  int working_digits = 0;
  std::vector<EnergyResult> results;
  std::optional<int> critical_dimension;
  std::vector<SignViolation> sign_pattern_violations;
};

// Evaluates the whole range at one shared working precision, the guard floor
// of d_max, so the per-dimension special-function cache is reused across the
// scan. Precision refusals propagate with the offending dimension attached.
ScanReport scan(BoundaryCondition bc, int d_min, int d_max, const PrecisionContext& ctx);

// -E / (|E| log10 |E|): compresses twelve orders of magnitude onto a plot
// while preserving the sign of E. Requires 0 < |E| < 1.
Real scaled_value(const EnergyResult& e);

// Decimal-arithmetic emulation: values are kept on a wide binary carrier but
// rounded to `digits` significant decimal digits (nearest-even) after every
// multiplication and addition, with every input correctly rounded on entry.
class DecimalContext {
public:
  explicit DecimalContext(int digits);

  int digits() const { return digits_; }
  int carrier_digits() const { return carrier_digits_; }
  mpfr_prec_t carrier_bits() const { return carrier_bits_; }

  Real round(const Real& x) const;
  Real mul(const Real& a, const Real& b) const;
  Real add(const Real& a, const Real& b) const;

private:
  int digits_;
  int carrier_digits_;
  mpfr_prec_t carrier_bits_;
};

// The closed-form Dirichlet sum evaluated under the emulation model.
// Documented semantics: per term, the five factors
//   C(D-1,p), 2^(-D-1), Gamma((p+2)/2), pi^((-p-2)/2), zeta(p+2)
// are each correctly rounded to the emulated digits, multiplied in that
// order with rounding after every multiply, the sign (-1)^(p+D) applied
// exactly, and the terms accumulated in ascending p with rounding after
// every add.
Real emulated_dirichlet_energy(int dimension, const DecimalContext& dec);

// Precision-degradation study: Dirichlet energies for every digit setting
// under the emulation model, compared against a full-precision reference.
// first_sign_error / first_digit_error record the smallest dimension where
// the emulated sign (resp. the leading significant digit, sign included)
// disagrees with the reference.
struct PrecisionStudyReport {
  struct Setting {
    int digits = 0;
    std::optional<int> first_sign_error;
    std::optional<int> first_digit_error;
    std::vector<std::string> values;  // per dimension, at `digits` significant digits
  };
  int d_min = 0;
  int d_max = 0;
  int reference_digits = 0;
  std::vector<int> digit_settings;
  std::vector<std::string> reference_values;  // per dimension, 30 significant digits
  std::vector<Setting> per_setting;
};

// reference_digits must exceed max(digit_settings) + 20. Refusals are
// deliberately absent from the emulated path: the garbage values are the
// object of study.
PrecisionStudyReport precision_study(int d_min, int d_max, std::vector<int> digit_settings,
                                     int reference_digits);

}  // namespace casimir
