#include "casimir/oracle.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "casimir/specfun.hpp"

namespace casimir {

CutoffGrid CutoffGrid::geometric(double start, double ratio, int count, double threshold,
                                 mpfr_prec_t bits) {
  if (count < 1) throw std::invalid_argument("CutoffGrid: count must be >= 1");
  if (!(ratio > 0.0 && ratio < 1.0))
    throw std::invalid_argument("CutoffGrid: ratio must be in (0,1)");
  CutoffGrid g{{}, Real::from_double(threshold, bits)};
  Real a = Real::from_double(start, bits);
  Real q = Real::from_double(ratio, bits);
  for (int i = 0; i < count; ++i) {
    g.values.push_back(a);
    a = a * q;
  }
  g.validate();
  return g;
}

void CutoffGrid::validate() const {
  if (values.empty()) throw std::invalid_argument("CutoffGrid: empty grid");
  for (size_t i = 0; i < values.size(); ++i) {
    if (values[i].sign() <= 0) throw std::invalid_argument("CutoffGrid: a must be > 0");
    if (i > 0 && values[i] >= values[i - 1])
      throw std::invalid_argument("CutoffGrid: values must be strictly decreasing");
  }
  if (threshold < Real::from_long(40, threshold.bits()))
    throw std::invalid_argument("CutoffGrid: threshold must be >= 40");
}

namespace {

// Distinct squared radii m <= m_max with their multiplicities, ascending.
// Bounding-box enumeration with early exit on the partial sum; Dirichlet
// indices start at 1, Neumann at 0 (m = 0 is skipped: zero contribution).
std::vector<std::pair<uint64_t, uint32_t>> radius_counts(int dimension, BoundaryCondition bc,
                                                         uint64_t m_max) {
  std::vector<uint32_t> counts(m_max + 1, 0);
  const uint64_t lo = bc == BoundaryCondition::dirichlet ? 1 : 0;
  auto square = [](uint64_t n) { return n * n; };
  switch (dimension) {
    case 1:
      for (uint64_t n1 = lo; square(n1) <= m_max; ++n1) ++counts[square(n1)];
      break;
    case 2:
      for (uint64_t n1 = lo; square(n1) <= m_max; ++n1)
        for (uint64_t n2 = lo; square(n1) + square(n2) <= m_max; ++n2)
          ++counts[square(n1) + square(n2)];
      break;
    case 3:
      for (uint64_t n1 = lo; square(n1) <= m_max; ++n1)
        for (uint64_t n2 = lo; square(n1) + square(n2) <= m_max; ++n2) {
          const uint64_t s2 = square(n1) + square(n2);
          for (uint64_t n3 = lo; s2 + square(n3) <= m_max; ++n3) ++counts[s2 + square(n3)];
        }
      break;
    case 4:
      for (uint64_t n1 = lo; square(n1) <= m_max; ++n1)
        for (uint64_t n2 = lo; square(n1) + square(n2) <= m_max; ++n2) {
          const uint64_t s2 = square(n1) + square(n2);
          for (uint64_t n3 = lo; s2 + square(n3) <= m_max; ++n3) {
            const uint64_t s3 = s2 + square(n3);
            for (uint64_t n4 = lo; s3 + square(n4) <= m_max; ++n4) ++counts[s3 + square(n4)];
          }
        }
      break;
    default:
      throw std::invalid_argument("radius_counts: dimension must be in [1,4]");
  }
  std::vector<std::pair<uint64_t, uint32_t>> out;
  for (uint64_t m = 1; m <= m_max; ++m)
    if (counts[m] != 0) out.emplace_back(m, counts[m]);
  return out;
}

uint64_t squared_radius_cutoff(const Real& a, const Real& threshold) {
  Real limit = (threshold / a) * (threshold / a);
  double d = limit.to_double();
  if (!(d >= 1.0)) throw std::invalid_argument("regularized_sum: threshold/a too small");
  if (d > 9.0e15) throw std::invalid_argument("regularized_sum: threshold/a too large");
  return static_cast<uint64_t>(d);
}

// (pi/2) sum over distinct squared radii, ascending m; fixed order keeps the
// accumulation deterministic.
Real sum_over_counts(const std::vector<std::pair<uint64_t, uint32_t>>& counts, const Real& a,
                     uint64_t m_cut, mpfr_prec_t bits) {
  Real sum = Real::zero(bits);
  for (const auto& [m, c] : counts) {
    if (m > m_cut) break;
    Real r = Real::from_long(static_cast<long>(m), bits).sqrt();
    Real term = r * (-(a * r)).exp() * static_cast<long>(c);
    sum = sum + term;
  }
  return sum * Real::pi(bits) / 2;
}

}  // namespace

Real regularized_sum(int dimension, BoundaryCondition bc, const Real& a, const Real& threshold,
                     const PrecisionContext& ctx) {
  if (dimension < 1 || dimension > 4)
    throw std::invalid_argument("regularized_sum: dimension must be in [1,4]");
  if (a.sign() <= 0) throw std::invalid_argument("regularized_sum: a must be > 0");
  if (threshold < Real::from_long(40, threshold.bits()))
    throw std::invalid_argument("regularized_sum: threshold must be >= 40");
  const mpfr_prec_t bits = ctx.working_bits();
  const uint64_t m_cut = squared_radius_cutoff(a, threshold);
  auto counts = radius_counts(dimension, bc, m_cut);
  return sum_over_counts(counts, a, m_cut, bits);
}

Real closed_form_1d(const Real& a, const PrecisionContext& ctx) {
  if (a.sign() <= 0) throw std::invalid_argument("closed_form_1d: a must be > 0");
  const mpfr_prec_t bits = ctx.working_bits();
  Real one = Real::from_long(1, bits);
  Real em(bits);
  {
    Real wide_a(bits);
    mpfr_set(wide_a.raw(), a.raw(), MPFR_RNDN);
    em = (-wide_a).exp();
  }
  Real d = one - em;
  return em / (d * d);
}

namespace {

// Cholesky solve of the normal equations at working precision. The condition
// estimate is (max pivot / min pivot)^2, a cheap proxy good enough to catch
// a degenerate basis.
struct NormalSolve {
  std::vector<Real> solution;
  double condition;
};

NormalSolve solve_normal_equations(std::vector<std::vector<Real>>& g, std::vector<Real>& rhs,
                                   mpfr_prec_t bits, int working_digits) {
  const size_t k = rhs.size();
  std::vector<std::vector<Real>> l(k, std::vector<Real>(k, Real::zero(bits)));
  Real min_pivot(bits), max_pivot(bits);
  for (size_t i = 0; i < k; ++i) {
    for (size_t j = 0; j <= i; ++j) {
      Real s = g[i][j];
      for (size_t t = 0; t < j; ++t) s = s - l[i][t] * l[j][t];
      if (i == j) {
        if (s.sign() <= 0) throw IllConditionedFit("ill-conditioned fit: pivot <= 0");
        l[i][i] = s.sqrt();
        if (i == 0) {
          min_pivot = l[0][0];
          max_pivot = l[0][0];
        } else {
          if (l[i][i] < min_pivot) min_pivot = l[i][i];
          if (l[i][i] > max_pivot) max_pivot = l[i][i];
        }
      } else {
        l[i][j] = s / l[j][j];
      }
    }
  }
  double condition = std::pow(10.0, 2.0 * (approx_log10_abs(max_pivot) -
                                           approx_log10_abs(min_pivot)));
  if (condition > std::pow(10.0, working_digits - 10))
    throw IllConditionedFit("ill-conditioned fit: condition exceeds precision budget");
  // forward then back substitution
  std::vector<Real> y(k, Real::zero(bits));
  for (size_t i = 0; i < k; ++i) {
    Real s = rhs[i];
    for (size_t t = 0; t < i; ++t) s = s - l[i][t] * y[t];
    y[i] = s / l[i][i];
  }
  std::vector<Real> x(k, Real::zero(bits));
  for (size_t ii = k; ii-- > 0;) {
    Real s = y[ii];
    for (size_t t = ii + 1; t < k; ++t) s = s - l[t][ii] * x[t];
    x[ii] = s / l[ii][ii];
  }
  return NormalSolve{std::move(x), condition};
}

}  // namespace

OracleFit fit_constant(int dimension, BoundaryCondition bc, const CutoffGrid& grid,
                       const std::vector<Real>& energies, const PrecisionContext& ctx) {
  grid.validate();
  const size_t n = grid.values.size();
  if (energies.size() != n)
    throw std::invalid_argument("fit_constant: grid/energy size mismatch");
  if (n < static_cast<size_t>(dimension + 5))
    throw std::invalid_argument("fit_constant: need at least D+5 grid points");
  if (grid.values.front() > Real::from_double(0.5, grid.values.front().bits()))
    throw std::invalid_argument("fit_constant: largest a must be <= 0.5");
  {
    Real span = grid.values.front() / grid.values.back();
    if (span < Real::from_long(4, span.bits()))
      throw std::invalid_argument("fit_constant: grid must span a factor >= 4");
  }

  const mpfr_prec_t bits = ctx.working_bits();
  std::vector<long> exps;
  for (long j = -(dimension + 1); j <= 2; ++j) exps.push_back(j);
  const size_t k = exps.size();

  // Columns scaled by the geometric mid of the grid so every column is O(1)
  // across the grid; the raw powers would span ~10 decades at D=3.
  Real a_mid = (grid.values.front() * grid.values.back()).sqrt();
  std::vector<std::vector<Real>> design(n, std::vector<Real>(k, Real::zero(bits)));
  for (size_t i = 0; i < n; ++i) {
    Real scaled = grid.values[i] / a_mid;
    for (size_t jj = 0; jj < k; ++jj) design[i][jj] = scaled.pow_si(exps[jj]);
  }

  std::vector<std::vector<Real>> gram(k, std::vector<Real>(k, Real::zero(bits)));
  std::vector<Real> rhs(k, Real::zero(bits));
  for (size_t p = 0; p < k; ++p) {
    for (size_t q = 0; q <= p; ++q) {
      Real s = Real::zero(bits);
      for (size_t i = 0; i < n; ++i) s = s + design[i][p] * design[i][q];
      gram[p][q] = s;
      gram[q][p] = s;
    }
    Real s = Real::zero(bits);
    for (size_t i = 0; i < n; ++i) s = s + design[i][p] * energies[i];
    rhs[p] = s;
  }

  NormalSolve ns = solve_normal_equations(gram, rhs, bits, ctx.working_digits());

  Real max_residual = Real::zero(bits);
  for (size_t i = 0; i < n; ++i) {
    Real fitted = Real::zero(bits);
    for (size_t jj = 0; jj < k; ++jj) fitted = fitted + design[i][jj] * ns.solution[jj];
    Real r = (fitted - energies[i]).abs();
    if (r > max_residual) max_residual = r;
  }

  std::vector<Real> coeffs;
  Real constant = Real::zero(bits);
  for (size_t jj = 0; jj < k; ++jj) {
    Real c = ns.solution[jj] * a_mid.pow_si(-exps[jj]);
    if (exps[jj] == 0) constant = c;
    coeffs.push_back(std::move(c));
  }

  return OracleFit{dimension, bc,       grid,        exps, std::move(coeffs),
                   constant,  max_residual, ns.condition};
}

OracleFit extract_constant(int dimension, BoundaryCondition bc, const CutoffGrid& grid,
                           const PrecisionContext& ctx) {
  if (dimension < 1 || dimension > 3)
    throw std::invalid_argument("extract_constant: dimension must be in [1,3]");
  grid.validate();
  const mpfr_prec_t bits = ctx.working_bits();
  const uint64_t m_max = squared_radius_cutoff(grid.values.back(), grid.threshold);
  auto counts = radius_counts(dimension, bc, m_max);
  std::vector<Real> energies;
  energies.reserve(grid.values.size());
  for (const Real& a : grid.values) {
    const uint64_t m_cut = squared_radius_cutoff(a, grid.threshold);
    energies.push_back(sum_over_counts(counts, a, m_cut, bits));
  }
  return fit_constant(dimension, bc, grid, energies, ctx);
}

namespace {

ExactInteger falling_product(long top, long count) {
  ExactInteger r(1);
  for (long t = 0; t < count; ++t) r = r * ExactInteger(top - t);
  return r;
}

ExactInteger pow2_exact(long e) {
  ExactInteger r;
  mpz_ui_pow_ui(r.raw(), 2, static_cast<unsigned long>(e));
  return r;
}

}  // namespace

ExactRational negativity_sum(int dimension, int i) {
  if (i < 1 || i > dimension)
    throw std::invalid_argument("negativity_sum: requires 1 <= i <= D");
  ExactRational acc;
  for (long k = i; k <= dimension; ++k) {
    ExactInteger num = binomial(dimension, k) * falling_product(k - 1, i - 1);
    ExactRational term(num, pow2_exact(k - i));
    if ((k - i) % 2 != 0) term = -term;
    acc = acc + term;
  }
  return acc;
}

ExactRational negativity_sum_poly_form(int dimension, int i) {
  if (i < 1 || i > dimension)
    throw std::invalid_argument("negativity_sum_poly_form: requires 1 <= i <= D");
  ExactRational acc;
  for (long j = i - 1; j <= dimension - 1; ++j) {
    // j!/(j-i+1)! = j (j-1) ... (j-i+2), i.e. i-1 falling factors
    ExactRational term(falling_product(j, i - 1), pow2_exact(j - i + 1));
    acc = acc + term;
  }
  return acc;
}

NegativityReport verify_neumann_negativity(int d_max) {
  if (d_max < 1) throw std::invalid_argument("verify_neumann_negativity: d_max must be >= 1");
  NegativityReport report;
  report.d_max = d_max;
  for (int d = 1; d <= d_max; ++d) {
    for (int i = 1; i <= d; ++i) {
      ExactRational lhs = negativity_sum(d, i);
      ExactRational rhs = negativity_sum_poly_form(d, i);
      ++report.pairs_checked;
      if (lhs != rhs)
        report.violations.push_back({d, i, "binomial and derivative forms differ"});
      if (lhs.sign() <= 0) report.violations.push_back({d, i, "sum is not positive"});
    }
  }
  return report;
}

}  // namespace casimir
