#pragma once

#include <stdexcept>
#include <string>

#include "casimir/precision.hpp"

namespace casimir {

enum class BoundaryCondition { dirichlet, neumann };

std::string to_string(BoundaryCondition bc);

// Requested working digits cannot resolve the value through the alternating
// cancellation; raised instead of returning noise.
class InsufficientPrecision : public std::runtime_error {
public:
  InsufficientPrecision(int dimension, int working_digits, double loss_digits);
  int dimension;
  int working_digits;
  double loss_digits;
};

// A numerical step produced an unusable result (singular fit, vanishing
// sum, ...). Distinct from precision refusal: more precision may not help.
class NumericalFailure : public std::runtime_error {
public:
  explicit NumericalFailure(const std::string& what) : std::runtime_error(what) {}
};

// One energy evaluation. value is in units of beta (beta = 1 internally).
// cancellation_digits_lost = log10(max_abs_term / |value|): how many leading
// digits the alternating sum destroyed.
struct EnergyResult {
  int dimension;
  BoundaryCondition bc;
  Real value;
  int sign;  // +1 or -1
  Real max_abs_term;
  double cancellation_digits_lost;
  PrecisionContext context;  // effective context (guard floor applied)
};

// Guard-digit floor for a dimension-D evaluation: 10 + ceil(D/2). The
// alternating closed-form sum loses digits roughly linearly in D; this floor
// keeps the default-precision path out of the noise for the scanned range.
int guard_floor(int dimension);

// Pre-run estimate (in plain doubles) of log10 of the largest term of the
// D-dimensional alternating sum. Assumes |E| is O(1), which is right for the
// scan range; the post-run check uses the measured loss instead.
double estimate_cancellation_loss(int dimension);

// p-th summand of the closed-form Dirichlet energy:
//   2^(-D-1) C(D-1,p) (-1)^(p+D) pi^((-p-2)/2) Gamma((p+2)/2) zeta(p+2)
Real dirichlet_term(int dimension, int p, const PrecisionContext& ctx);

// Closed-form Dirichlet energy: sum of dirichlet_term over p = 0..D-1,
// ascending, plain sequential addition at working precision. Enforces the
// guard floor; refuses when working digits < estimated or measured
// cancellation loss + 5.
EnergyResult dirichlet_energy(int dimension, const PrecisionContext& ctx);

// Neumann energy via the binomial reduction to Dirichlet energies:
//   E_N(D) = sum_{k=1}^{D} C(D,k) E_Di(k)
// Inner Dirichlet values are cached per (k, working precision).
EnergyResult neumann_energy(int dimension, const PrecisionContext& ctx);

// Same evaluations with the working precision pinned by the caller (no guard
// floor raise). Lets a scan share one precision (and thus one zeta cache)
// across dimensions, and lets the precision study disable the floor.
// working_digits must be >= target_digits of the intended readout.
EnergyResult dirichlet_energy_at(int dimension, int target_digits, int working_digits);
EnergyResult neumann_energy_at(int dimension, int target_digits, int working_digits);

}  // namespace casimir
