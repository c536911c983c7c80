#pragma once

#include "tracecoeff/number_field.hpp"
#include "tracecoeff/real.hpp"

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

namespace tracecoeff {

bool is_prime_power(std::int64_t q);

/// Eulerian numbers A(m, 0..m-1); row 0 is {1}. Rows up to 16 are memoized.
std::vector<BigInt> eulerian_row(int m);

/// zeta_v^{(m)}(1) = (-log q)^m * rational_part, rational_part = sum_{k>=0} k^m q^{-k}.
struct LocalZetaValue {
    std::int64_t q;
    int m;
    Rational rational_part;
    int log_power;
    Real numeric() const;
};

LocalZetaValue local_value(std::int64_t q, int m);

/// |zeta_v^{(m)}(1) / zeta_v(1)| = coefficient * (log q)^log_power.
struct LogPowerValue {
    Rational coefficient;
    int log_power;
};
LogPowerValue log_derivative_ratio(std::int64_t q, int m);

struct RatioLemmaReport {
    bool holds;
    // Both sides share the factor (log q)^log_power, so the comparison is exact.
    Rational lhs;
    Rational rhs;
    int log_power;
};
/// |z^{(m1)} z^{(m2)}| <= 2^{2(m1+m2)+2} |z^{(m1+m2)}| at s = 1, or |z(1)| <= 2 if an order is 0.
RatioLemmaReport verify_ratio_lemma(std::int64_t q, int m1, int m2);

/// Product of (log q)^p factors, sorted by q, powers positive.
using LogMonomial = std::vector<std::pair<std::int64_t, int>>;
/// Exact linear combination of log monomials.
using LogPolynomial = std::map<LogMonomial, Rational>;

Real evaluate(const LogPolynomial& p);
std::string to_string(const LogMonomial& m);

struct ZetaFactor {
    LogPolynomial symbolic;
    Real value;
};

/// Sum over tuples (s_v) with sum s_v <= eta of prod_v |zeta_v^{(s_v)}(1)/zeta_v(1)|,
/// by a degree-eta truncated product of per-place polynomials.
ZetaFactor zeta_factor(const std::vector<std::int64_t>& q_values, int eta);
ZetaFactor zeta_factor(const std::vector<FinitePlace>& places, int eta);
/// Same sum by explicit tuple enumeration.
ZetaFactor zeta_factor_brute_force(const std::vector<std::int64_t>& q_values, int eta);

/// min and max of ratio(q,s)(q-1)/(log q)^s over prime powers q <= q_max and 1 <= s <= s_max.
struct SandwichReport {
    Rational min_value;
    Rational max_value;
    std::int64_t argmin_q;
    int argmin_s;
    std::int64_t argmax_q;
    int argmax_s;
};
SandwichReport ratio_sandwich(std::int64_t q_max, int s_max);

}  // namespace tracecoeff
