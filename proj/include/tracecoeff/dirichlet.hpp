#pragma once

#include "tracecoeff/real.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace tracecoeff {

/// Kronecker symbol (d/n) for n >= 0.
int kronecker(std::int64_t d, std::int64_t n);

bool is_squarefree(std::int64_t m);
bool is_fundamental_discriminant(std::int64_t d);
/// Discriminant of Q(sqrt(m)) for squarefree m != 0, 1.
std::int64_t quadratic_discriminant(std::int64_t m);

/// Bernoulli number B_{2j} (exact, memoized).
const Rational& bernoulli_even(int j);

/// Derivatives of order 0..max_order at real s of the Dirichlet series
/// sum_{n>=1} c(n) n^{-s}, where c has period coeffs.size() and coeffs[r] = c(n) for n = r mod period.
///
/// Evaluated as an explicit head sum over n <= N*period followed by an
/// Euler-Maclaurin tail per residue class. At s = 1 the coefficients must sum
/// to zero over a period; the divergent parts of the tail integrals cancel.
/// Each result carries an absolute error estimate (first omitted
/// Euler-Maclaurin term plus accumulated rounding).
std::vector<Approx> periodic_dirichlet_series(std::span<const int> coeffs, const Real& s,
                                              int max_order, int precision_bits);

/// L^{(k)}(s, chi_d) for k = 0..max_order, chi_d the Kronecker character of the
/// fundamental discriminant d. d = 1 gives the Riemann zeta function (s > 1 only).
std::vector<Approx> l_function_derivatives(std::int64_t d, const Real& s, int max_order,
                                           int precision_bits);

}  // namespace tracecoeff
