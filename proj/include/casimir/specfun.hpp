#pragma once

#include "casimir/exact.hpp"
#include "casimir/precision.hpp"

namespace casimir {

// Non-negative multiple of 1/2, stored as twice the value. Covers every
// gamma argument the energy formulas produce: (p+2)/2 for p >= 0.
class HalfInteger {
public:
  explicit HalfInteger(long twice_value);
  explicit HalfInteger(const ExactInteger& twice_value);

  const ExactInteger& twice_value() const { return twice_; }
  bool is_integer() const;
  // Valid only when is_integer(); the represented integer k.
  long integer_part() const;

private:
  ExactInteger twice_;
};

// Riemann zeta at an integer argument s >= 2, accurate to the context's
// target digits. Primary method: truncated direct sum plus Euler-Maclaurin
// tail corrections with an explicit first-omitted-term error bound.
// Memoized per (s, working precision).
Real zeta_int(long s, const PrecisionContext& ctx);

// Independent zeta evaluation through the accelerated alternating series
// (Cohen-Rodriguez Villegas-Zagier, Algorithm 1), eta(s) / (1 - 2^(1-s)).
// Shares no code path with zeta_int beyond base arithmetic; used to
// cross-check the primary method. Not cached.
Real zeta_int_alternating(long s, const PrecisionContext& ctx);

// Gamma at integer or half-integer argument, built exactly:
//   Gamma(k)       = (k-1)!
//   Gamma(k + 1/2) = ((2k)! / (4^k k!)) * sqrt(pi)
// then rounded once to working precision. No general-purpose gamma
// approximation is involved.
Real gamma_half(const HalfInteger& x, const PrecisionContext& ctx);

// Exact binomial coefficient; rejects k < 0 or k > n.
ExactInteger binomial(const ExactInteger& n, const ExactInteger& k);
ExactInteger binomial(long n, long k);

// Exact Bernoulli number B_m for even m >= 2 (the only ones the
// Euler-Maclaurin corrections need); computed by the defining recurrence
// sum_j C(m+1, j) B_j = 0 and memoized.
ExactRational bernoulli(long m);

}  // namespace casimir
