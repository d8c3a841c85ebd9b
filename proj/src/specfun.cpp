#include "casimir/specfun.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>
#include <vector>

namespace casimir {

namespace {
constexpr mpfr_rnd_t R = MPFR_RNDN;
}

HalfInteger::HalfInteger(long twice_value) : twice_(twice_value) {
  if (twice_value < 1) throw std::invalid_argument("HalfInteger: twice_value must be >= 1");
}

HalfInteger::HalfInteger(const ExactInteger& twice_value) : twice_(twice_value) {
  if (twice_.sign() < 1) throw std::invalid_argument("HalfInteger: twice_value must be >= 1");
}

bool HalfInteger::is_integer() const {
  return mpz_even_p(twice_.raw()) != 0;
}

long HalfInteger::integer_part() const { return twice_.to_long() / 2; }

// ---------------------------------------------------------------------------
// Bernoulli numbers

namespace {

std::mutex bernoulli_mutex;
// table[m] = B_m, grown on demand; odd entries kept so the recurrence stays
// the textbook one.
std::vector<ExactRational> bernoulli_table;

void extend_bernoulli_table(long m) {
  if (bernoulli_table.empty()) bernoulli_table.emplace_back(1);  // B_0
  for (long k = static_cast<long>(bernoulli_table.size()); k <= m; ++k) {
    // B_k = -1/(k+1) * sum_{j=0}^{k-1} C(k+1, j) B_j
    ExactRational acc;
    for (long j = 0; j < k; ++j) {
      if (j > 1 && j % 2 == 1) continue;  // B_odd = 0 beyond B_1
      ExactRational term(binomial(k + 1, j), ExactInteger(1));
      acc = acc + term * bernoulli_table[static_cast<size_t>(j)];
    }
    bernoulli_table.push_back(-(acc / ExactRational(k + 1)));
  }
}

ExactRational bernoulli_any(long m) {
  std::lock_guard<std::mutex> lock(bernoulli_mutex);
  extend_bernoulli_table(m);
  return bernoulli_table[static_cast<size_t>(m)];
}

}  // namespace

ExactRational bernoulli(long m) {
  if (m < 2 || m % 2 != 0)
    throw std::invalid_argument("bernoulli: m must be even and >= 2");
  return bernoulli_any(m);
}

ExactInteger binomial(const ExactInteger& n, const ExactInteger& k) {
  if (k.sign() < 0 || k > n)
    throw std::invalid_argument("binomial: requires 0 <= k <= n");
  if (!k.fits_long()) throw std::overflow_error("binomial: k too large");
  ExactInteger r;
  mpz_bin_ui(r.raw(), n.raw(), static_cast<unsigned long>(k.to_long()));
  return r;
}

ExactInteger binomial(long n, long k) {
  return binomial(ExactInteger(n), ExactInteger(k));
}

// ---------------------------------------------------------------------------
// Riemann zeta, primary method: Euler-Maclaurin.
//
//   zeta(s) = sum_{n=1}^{N-1} n^-s + N^-s/2 + N^(1-s)/(s-1)
//           + sum_{j=1}^{M} B_2j/(2j)! * s(s+1)...(s+2j-2) * N^(-s-2j+1)
//
// The correction series is asymptotic: terms shrink until 2j ~ 2*pi*N and
// then diverge, with the optimal truncation error ~ e^(-2*pi*N). Choosing
// N ~ d * ln(10)/(2*pi) decimal digits therefore suffices; M is picked
// adaptively by stopping when a term falls below the tolerance, and if the
// terms start growing before that (N was too small), N is doubled and the
// whole evaluation restarts. The error is bounded by the first omitted term.

namespace {

Real zeta_euler_maclaurin(long s, mpfr_prec_t bits) {
  const int digits = static_cast<int>(static_cast<double>(bits) / 3.321928) + 1;
  Real tol = Real::two_pow(-static_cast<long>(bits) + 4, bits);  // ~ulp-level relative
  long n_direct = static_cast<long>(std::ceil(0.37 * digits)) + 8;
  for (int attempt = 0; attempt < 8; ++attempt, n_direct *= 2) {
    Real sum = Real::zero(bits);
    for (long n = 1; n < n_direct; ++n)
      sum = sum + Real::from_long(n, bits).pow_si(-s);
    Real npow = Real::from_long(n_direct, bits).pow_si(-s);
    sum = sum + npow / 2;
    // integral tail: N^(1-s)/(s-1)
    sum = sum + Real::from_long(n_direct, bits).pow_si(1 - s) / (s - 1);

    // rising factorial s(s+1)...(s+2j-2), maintained incrementally
    ExactInteger poch(s);
    Real prev_mag(bits);
    bool converged = false;
    bool diverged = false;
    for (long j = 1; !converged && !diverged; ++j) {
      ExactRational coeff =
          ExactRational(bernoulli(2 * j).numerator(),
                        bernoulli(2 * j).denominator() * ExactInteger::factorial(
                                                             static_cast<unsigned long>(2 * j)));
      Real term = coeff.to_real(bits) * poch.to_real(bits) *
                  Real::from_long(n_direct, bits).pow_si(-s - 2 * j + 1);
      Real mag = term.abs();
      if (j > 1 && mag >= prev_mag) {
        diverged = true;  // asymptotic series turned; need larger N
        break;
      }
      sum = sum + term;
      if (mag < tol * sum.abs()) converged = true;
      prev_mag = mag;
      poch = poch * ExactInteger(s + 2 * j - 1) * ExactInteger(s + 2 * j);
    }
    if (converged) return sum;
  }
  throw std::runtime_error("zeta_euler_maclaurin: failed to converge");
}

std::mutex zeta_mutex;
std::map<std::pair<long, mpfr_prec_t>, Real> zeta_cache;

}  // namespace

Real zeta_int(long s, const PrecisionContext& ctx) {
  if (s < 2) throw std::invalid_argument("zeta_int: requires s >= 2");
  const mpfr_prec_t bits = ctx.working_bits();
  {
    std::lock_guard<std::mutex> lock(zeta_mutex);
    auto it = zeta_cache.find({s, bits});
    if (it != zeta_cache.end()) return it->second;
  }
  Real value = zeta_euler_maclaurin(s, bits);
  std::lock_guard<std::mutex> lock(zeta_mutex);
  return zeta_cache.emplace(std::make_pair(s, bits), std::move(value)).first->second;
}

// Alternating-series acceleration: eta(s) = sum (-1)^k (k+1)^-s converges
// for s > 0 and accelerates to ~(3+sqrt 8)^-n with n terms of Chebyshev
// weights. The accelerated sum cancels ~0.77n digits internally, so the
// working precision is raised accordingly before rounding back down.
Real zeta_int_alternating(long s, const PrecisionContext& ctx) {
  if (s < 2) throw std::invalid_argument("zeta_int_alternating: requires s >= 2");
  const int digits = ctx.working_digits();
  const long n = static_cast<long>(std::ceil(1.31 * digits)) + 5;
  const mpfr_prec_t wb = bits_for_digits(static_cast<int>(2.2 * digits) + 25);

  Real d = (Real::from_long(3, wb) + Real::from_long(8, wb).sqrt()).pow_si(n);
  d = (d + Real::from_long(1, wb) / d) / 2;
  Real b = Real::from_long(-1, wb);
  Real c = -d;
  Real acc = Real::zero(wb);
  for (long k = 0; k < n; ++k) {
    c = b - c;
    acc = acc + c * Real::from_long(k + 1, wb).pow_si(-s);
    // b <- b * (k+n)(k-n) / ((k+1/2)(k+1))
    b = b * ((k + n) * (k - n) * 2);
    b = b / ((2 * k + 1) * (k + 1));
  }
  Real eta = acc / d;
  Real denom = Real::from_long(1, wb) - Real::two_pow(1 - s, wb);
  Real zeta = eta / denom;

  Real out(ctx.working_bits());
  mpfr_set(out.raw(), zeta.raw(), R);
  return out;
}

Real gamma_half(const HalfInteger& x, const PrecisionContext& ctx) {
  const mpfr_prec_t bits = ctx.working_bits();
  if (x.is_integer()) {
    long k = x.integer_part();
    return ExactInteger::factorial(static_cast<unsigned long>(k - 1)).to_real(bits);
  }
  // x = k + 1/2 with k >= 0: Gamma(x) = (2k)!/(4^k k!) * sqrt(pi)
  long k = (x.twice_value().to_long() - 1) / 2;
  ExactInteger num = ExactInteger::factorial(static_cast<unsigned long>(2 * k));
  ExactInteger den;
  mpz_ui_pow_ui(den.raw(), 4, static_cast<unsigned long>(k));
  den = den * ExactInteger::factorial(static_cast<unsigned long>(k));
  return ExactRational(num, den).to_real(bits) * Real::pi(bits).sqrt();
}

}  // namespace casimir
