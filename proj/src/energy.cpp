#include "casimir/energy.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <tuple>

#include "casimir/exact.hpp"
#include "casimir/specfun.hpp"

namespace casimir {

std::string to_string(BoundaryCondition bc) {
  return bc == BoundaryCondition::dirichlet ? "dirichlet" : "neumann";
}

namespace {

std::string refusal_message(int dimension, int working_digits, double loss_digits) {
  std::ostringstream os;
  os << "insufficient precision: D=" << dimension << " needs about "
     << static_cast<long>(std::ceil(loss_digits)) + 5 << " working digits, have "
     << working_digits;
  return os.str();
}

}  // namespace

InsufficientPrecision::InsufficientPrecision(int dim, int working, double loss)
    : std::runtime_error(refusal_message(dim, working, loss)),
      dimension(dim),
      working_digits(working),
      loss_digits(loss) {}

int guard_floor(int dimension) { return 10 + (dimension + 1) / 2; }

double estimate_cancellation_loss(int dimension) {
  const double l10 = std::log(10.0);
  double max_term = -HUGE_VAL;
  for (int p = 0; p < dimension; ++p) {
    // log10 of C(D-1,p), Gamma((p+2)/2), pi^((-p-2)/2), 2^(-D-1); zeta ~ 1.
    double lg = (std::lgamma(dimension) - std::lgamma(p + 1.0) -
                 std::lgamma(dimension - p + 0.0)) /
                l10;
    lg += std::lgamma((p + 2.0) / 2.0) / l10;
    lg += (-(p + 2.0) / 2.0) * std::log10(M_PI);
    lg += -(dimension + 1.0) * std::log10(2.0);
    if (p + 2 == 2) lg += 0.21626;  // log10 zeta(2)
    max_term = std::max(max_term, lg);
  }
  return std::max(0.0, max_term);
}

Real dirichlet_term(int dimension, int p, const PrecisionContext& ctx) {
  if (dimension < 1) throw std::invalid_argument("dirichlet_term: dimension must be >= 1");
  if (p < 0 || p > dimension - 1)
    throw std::invalid_argument("dirichlet_term: p outside [0, D-1]");
  const mpfr_prec_t bits = ctx.working_bits();

  // pi^((-p-2)/2): integer power for even p, otherwise shift the half power
  // into the exact sqrt(pi) carried by gamma_half's sibling factor.
  Real pi = Real::pi(bits);
  Real pi_pow(bits);
  if (p % 2 == 0) {
    pi_pow = pi.pow_si(-(p + 2) / 2);
  } else {
    pi_pow = pi.pow_si((-(p + 2) - 1) / 2) * pi.sqrt();
  }

  // Factor order matches the documented low-precision emulation model so the
  // two code paths differ only in rounding.
  Real t = binomial(dimension - 1, p).to_real(bits);
  t = t * Real::two_pow(-(dimension + 1), bits);
  t = t * gamma_half(HalfInteger(p + 2), ctx);
  t = t * pi_pow;
  t = t * zeta_int(p + 2, ctx);
  if ((p + dimension) % 2 != 0) t = -t;
  return t;
}

namespace {

struct CoreResult {
  Real value;
  Real max_abs_term;
  double loss;
};

std::mutex dirichlet_cache_mutex;
std::map<std::pair<int, mpfr_prec_t>, CoreResult> dirichlet_cache;

CoreResult dirichlet_core(int dimension, int working_digits) {
  const double est = estimate_cancellation_loss(dimension);
  if (working_digits < est + 5)
    throw InsufficientPrecision(dimension, working_digits, est);

  const mpfr_prec_t bits = bits_for_digits(working_digits);
  {
    std::lock_guard<std::mutex> lock(dirichlet_cache_mutex);
    auto it = dirichlet_cache.find({dimension, bits});
    if (it != dirichlet_cache.end()) return it->second;
  }

  PrecisionContext work(working_digits, 0);
  Real sum = Real::zero(bits);
  Real max_abs = Real::zero(bits);
  for (int p = 0; p < dimension; ++p) {
    Real t = dirichlet_term(dimension, p, work);
    Real a = t.abs();
    if (a > max_abs) max_abs = a;
    sum = sum + t;
  }
  if (sum.sign() == 0)
    throw InsufficientPrecision(dimension, working_digits, working_digits);
  double loss =
      std::max(0.0, approx_log10_abs(max_abs) - approx_log10_abs(sum));
  if (working_digits - loss < 5)
    throw InsufficientPrecision(dimension, working_digits, loss);

  CoreResult r{sum, max_abs, loss};
  std::lock_guard<std::mutex> lock(dirichlet_cache_mutex);
  return dirichlet_cache.emplace(std::make_pair(dimension, bits), std::move(r))
      .first->second;
}

CoreResult neumann_core(int dimension, int working_digits) {
  const mpfr_prec_t bits = bits_for_digits(working_digits);
  Real sum = Real::zero(bits);
  Real max_abs = Real::zero(bits);
  for (int k = 1; k <= dimension; ++k) {
    CoreResult inner = dirichlet_core(k, working_digits);
    Real term = binomial(dimension, k).to_real(bits) * inner.value;
    Real a = term.abs();
    if (a > max_abs) max_abs = a;
    sum = sum + term;
  }
  if (sum.sign() == 0)
    throw InsufficientPrecision(dimension, working_digits, working_digits);
  double loss =
      std::max(0.0, approx_log10_abs(max_abs) - approx_log10_abs(sum));
  if (working_digits - loss < 5)
    throw InsufficientPrecision(dimension, working_digits, loss);
  return CoreResult{sum, max_abs, loss};
}

EnergyResult wrap(int dimension, BoundaryCondition bc, CoreResult core,
                  int target_digits, int working_digits) {
  return EnergyResult{dimension,
                      bc,
                      core.value,
                      core.value.sign() >= 0 ? 1 : -1,
                      core.max_abs_term,
                      core.loss,
                      PrecisionContext(target_digits, working_digits - target_digits)};
}

void check_dimension(int dimension) {
  if (dimension < 1) throw std::invalid_argument("energy: dimension must be >= 1");
}

}  // namespace

EnergyResult dirichlet_energy(int dimension, const PrecisionContext& ctx) {
  check_dimension(dimension);
  int working = ctx.target_digits() + std::max(ctx.guard_digits(), guard_floor(dimension));
  return wrap(dimension, BoundaryCondition::dirichlet, dirichlet_core(dimension, working),
              ctx.target_digits(), working);
}

EnergyResult neumann_energy(int dimension, const PrecisionContext& ctx) {
  check_dimension(dimension);
  int working = ctx.target_digits() + std::max(ctx.guard_digits(), guard_floor(dimension));
  return wrap(dimension, BoundaryCondition::neumann, neumann_core(dimension, working),
              ctx.target_digits(), working);
}

EnergyResult dirichlet_energy_at(int dimension, int target_digits, int working_digits) {
  check_dimension(dimension);
  if (working_digits < target_digits)
    throw std::invalid_argument("dirichlet_energy_at: working < target");
  return wrap(dimension, BoundaryCondition::dirichlet, dirichlet_core(dimension, working_digits),
              target_digits, working_digits);
}

EnergyResult neumann_energy_at(int dimension, int target_digits, int working_digits) {
  check_dimension(dimension);
  if (working_digits < target_digits)
    throw std::invalid_argument("neumann_energy_at: working < target");
  return wrap(dimension, BoundaryCondition::neumann, neumann_core(dimension, working_digits),
              target_digits, working_digits);
}

}  // namespace casimir
