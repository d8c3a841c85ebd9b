#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "casimir/energy.hpp"
#include "casimir/exact.hpp"
#include "casimir/precision.hpp"

namespace casimir {

// Grid of exponential-cutoff parameters a (strictly descending) plus the
// truncation threshold T: lattice modes with a*r > T are dropped, which
// bounds the dropped tail by ~e^(-T) relative per shell. T >= 40 keeps that
// far below every tolerance used here.
struct CutoffGrid {
  std::vector<Real> values;
  Real threshold;

  static CutoffGrid geometric(double start, double ratio, int count, double threshold,
                              mpfr_prec_t bits);
  void validate() const;
};

// Result of fitting the cutoff-grid energies to sum_j c_j a^j. The basis
// runs j = -(D+1)..+2: the strongest divergence of the D-dimensional sum is
// a^-(D+1), and the two positive powers absorb the leading analytic
// corrections. extracted_constant is c_0, the Casimir energy candidate.
struct OracleFit {
  int dimension;
  BoundaryCondition bc;
  CutoffGrid grid;
  std::vector<long> basis_exponents;
  std::vector<Real> coefficients;
  Real extracted_constant;
  Real max_residual;
  double condition_estimate;
};

class IllConditionedFit : public NumericalFailure {
public:
  explicit IllConditionedFit(const std::string& what) : NumericalFailure(what) {}
};

// Brute-force regularized mode sum (pi/2) sum r e^(-a r) over the integer
// lattice, r = sqrt(n1^2+...+nD^2); indices start at 1 (Dirichlet) or 0
// (Neumann; the all-zero mode contributes nothing). Truncated at a*r >
// threshold, so the dropped tail is < e^(-threshold) relative. Cost grows as
// (threshold/a)^D; restricted to D <= 4 by contract.
Real regularized_sum(int dimension, BoundaryCondition bc, const Real& a,
                     const Real& threshold, const PrecisionContext& ctx);

// Geometric-series closed form sum_{n>=1} n e^(-a n) = e^(-a)/(1-e^(-a))^2,
// the exact D=1 counterpart of regularized_sum (without the pi/2).
Real closed_form_1d(const Real& a, const PrecisionContext& ctx);

// Least-squares fit of precomputed grid energies to the divergent-power
// basis; exposed separately so analytic closed-form data can run through the
// identical fitting pipeline.
OracleFit fit_constant(int dimension, BoundaryCondition bc, const CutoffGrid& grid,
                       const std::vector<Real>& energies, const PrecisionContext& ctx);

// End-to-end finite-part extraction: evaluate the regularized sum on the
// grid (one shared lattice enumeration, grouped by squared radius), fit, and
// return c_0. D <= 3 by contract (brute force is desk-scale by design).
OracleFit extract_constant(int dimension, BoundaryCondition bc, const CutoffGrid& grid,
                           const PrecisionContext& ctx);

// Exact rational sum behind the Neumann negativity proof:
//   S(D,i) = sum_{k=i}^{D} C(D,k) (k-1)(k-2)...(k-i+1) (-1/2)^(k-i)
// (empty falling product = 1 when i = 1). Positivity of S(D,i) for all
// 1 <= i <= D forces every derivative that enters the Neumann reduction to
// be positive, hence the Neumann energy negative.
ExactRational negativity_sum(int dimension, int i);

// The same quantity written as the (i-1)-th derivative of the geometric
// polynomial y^(D-1)+...+1 at y = 1/2:
//   sum_{j=i-1}^{D-1} j!/(j-i+1)! (1/2)^(j-i+1)
// Independent form used to cross-check negativity_sum exactly.
ExactRational negativity_sum_poly_form(int dimension, int i);

struct NegativityReport {
  struct Violation {
    int dimension;
    int i;
    std::string reason;
  };
  int d_max = 0;
  long pairs_checked = 0;
  std::vector<Violation> violations;
  bool passed() const { return violations.empty(); }
};

// Checks, in exact arithmetic for every 1 <= i <= D <= d_max, that both
// forms above agree and are positive. Expected: zero violations.
NegativityReport verify_neumann_negativity(int d_max);

}  // namespace casimir
