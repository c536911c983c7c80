#include "tracecoeff/dirichlet.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace tracecoeff {

int kronecker(std::int64_t d, std::int64_t n) {
    if (n < 0) throw std::invalid_argument("kronecker: n must be non-negative");
    if (n == 0) return (d == 1 || d == -1) ? 1 : 0;
    int result = 1;
    while (n % 2 == 0) {
        n /= 2;
        if (d % 2 == 0) return 0;
        std::int64_t r = ((d % 8) + 8) % 8;
        if (r == 3 || r == 5) result = -result;
    }
    // Jacobi symbol (d/n) for odd n.
    std::int64_t a = ((d % n) + n) % n;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            std::int64_t r = n % 8;
            if (r == 3 || r == 5) result = -result;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) result = -result;
        a %= n;
    }
    return n == 1 ? result : 0;
}

bool is_squarefree(std::int64_t m) {
    if (m == 0) return false;
    std::uint64_t x = m < 0 ? static_cast<std::uint64_t>(-m) : static_cast<std::uint64_t>(m);
    for (std::uint64_t p = 2; p * p <= x; ++p) {
        if (x % (p * p) == 0) return false;
        if (x % p == 0) x /= p;
    }
    return true;
}

bool is_fundamental_discriminant(std::int64_t d) {
    if (d == 1 || d == 0) return false;
    std::int64_t r = ((d % 4) + 4) % 4;
    if (r == 1) return is_squarefree(d);
    if (r != 0) return false;
    std::int64_t m = d / 4;
    std::int64_t rm = ((m % 4) + 4) % 4;
    return (rm == 2 || rm == 3) && is_squarefree(m);
}

std::int64_t quadratic_discriminant(std::int64_t m) {
    if (m == 0 || m == 1 || !is_squarefree(m))
        throw std::invalid_argument("quadratic_discriminant: m must be squarefree and != 0, 1");
    return (((m % 4) + 4) % 4 == 1) ? m : 4 * m;
}

const Rational& bernoulli_even(int j) {
    constexpr int kMaxIndex = 80;
    // Akiyama-Tanigawa; it yields B_1 = +1/2 but only even indices are exposed.
    static const std::vector<Rational> table = [] {
        std::vector<Rational> out;
        std::vector<Rational> a(2 * kMaxIndex + 1);
        for (std::size_t m = 0; m < a.size(); ++m) {
            a[m] = Rational(1, static_cast<long>(m + 1));
            for (std::size_t k = m; k >= 1; --k) a[k - 1] = Rational(static_cast<long>(k)) * (a[k - 1] - a[k]);
            out.push_back(a[0]);
        }
        return out;
    }();
    if (j < 0 || j > kMaxIndex) throw std::out_of_range("bernoulli_even: index out of range");
    return table[2 * static_cast<std::size_t>(j)];
}

namespace {

// Coefficients of d^r/dy^r [(log y)^k y^{-s}] = sum_i c[i] (log y)^i y^{-s-r}.
std::vector<std::vector<Real>> derivative_coefficients(int k, const Real& s, int max_r) {
    std::vector<std::vector<Real>> out;
    std::vector<Real> c(static_cast<std::size_t>(k) + 1, Real(0));
    c[static_cast<std::size_t>(k)] = 1;
    out.push_back(c);
    for (int r = 0; r < max_r; ++r) {
        std::vector<Real> next(c.size(), Real(0));
        const Real t = s + r;
        for (std::size_t i = 0; i < c.size(); ++i) {
            next[i] -= t * c[i];
            if (i + 1 < c.size()) next[i] += Real(static_cast<long>(i + 1)) * c[i + 1];
        }
        c = std::move(next);
        out.push_back(c);
    }
    return out;
}

Real eval_log_poly(const std::vector<Real>& c, const Real& log_y) {
    Real acc = 0;
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * log_y + c[i];
    return acc;
}

constexpr int kMaxBernoulli = 60;

}  // namespace

std::vector<Approx> periodic_dirichlet_series(std::span<const int> coeffs, const Real& s,
                                              int max_order, int precision_bits) {
    const auto period = static_cast<std::int64_t>(coeffs.size());
    if (period == 0) throw std::invalid_argument("periodic_dirichlet_series: empty coefficient table");
    if (max_order < 0) throw std::invalid_argument("periodic_dirichlet_series: negative order");
    if (precision_bits < 16 || precision_bits > kWorkingBits)
        throw std::invalid_argument("periodic_dirichlet_series: precision_bits outside [16, " +
                                    std::to_string(kWorkingBits) + "]");
    if (s <= 0) throw std::invalid_argument("periodic_dirichlet_series: s must be positive");
    const bool at_one = (s == 1);
    long coeff_sum = 0;
    for (int c : coeffs) coeff_sum += c;
    if (s < 1 || (at_one && coeff_sum != 0))
        throw std::domain_error("periodic_dirichlet_series: series diverges at this s");

    const Real target = ulp_scale(precision_bits);
    // The minimal Euler-Maclaurin term behaves like exp(-2 pi N).
    const auto blocks = static_cast<std::int64_t>(
        std::ceil(precision_bits * std::log(2.0) / (2.0 * M_PI))) + 3;
    const std::int64_t head_end = blocks * period;

    std::vector<Approx> result(static_cast<std::size_t>(max_order) + 1, Approx{Real(0), Real(0)});

    // Head: sum_{n <= head_end} c(n) (-log n)^k n^{-s}.
    Real max_head_term = 0;
    for (std::int64_t n = 1; n <= head_end; ++n) {
        const int c = coeffs[static_cast<std::size_t>(n % period)];
        if (c == 0) continue;
        const Real log_n = log(Real(n));
        Real term = at_one ? Real(c) / n : Real(c) * exp(-s * log_n);
        max_head_term = std::max(max_head_term, abs(term));
        for (int k = 0; k <= max_order; ++k) {
            result[static_cast<std::size_t>(k)].value += term;
            term *= -log_n;
        }
    }

    std::vector<std::vector<std::vector<Real>>> deriv;
    for (int k = 0; k <= max_order; ++k) deriv.push_back(derivative_coefficients(k, s, 2 * kMaxBernoulli));
    // B_{2j}/(2j)!
    static const std::vector<Real> bernoulli_weights = [] {
        std::vector<Real> w;
        Real fact = 1;
        for (int j = 1; j <= kMaxBernoulli; ++j) {
            fact *= Real(2 * j - 1) * Real(2 * j);
            w.push_back(to_real(bernoulli_even(j)) / fact);
        }
        return w;
    }();

    std::vector<Real> tail_error(static_cast<std::size_t>(max_order) + 1, Real(0));
    const Real p_real(period);
    std::vector<Real> ratio_pow(2 * kMaxBernoulli);
    for (std::int64_t a = 1; a <= period; ++a) {
        const int c = coeffs[static_cast<std::size_t>(a % period)];
        if (c == 0) continue;
        const Real y = Real(a) + Real(head_end);
        const Real log_y = log(y);
        const Real y_to_minus_s = at_one ? Real(1) / y : exp(-s * log_y);
        // g^{(r)}(N) = period^r f^{(r)}(y) for g(m) = f(a + m*period).
        ratio_pow[0] = 1;
        for (std::size_t r = 1; r < ratio_pow.size(); ++r) ratio_pow[r] = ratio_pow[r - 1] * p_real / y;
        for (int k = 0; k <= max_order; ++k) {
            const Real sign = (k % 2 == 0) ? Real(1) : Real(-1);
            const auto& dk = deriv[static_cast<std::size_t>(k)];
            Real integral = 0;
            if (at_one) {
                // Regularized: the upper-limit terms cancel across residues since sum c = 0.
                integral = -sign * pow(log_y, k + 1) / (Real(k + 1) * p_real);
            } else {
                Real fact_ratio = 1;  // k!/(k-i)!
                const Real y_pow = y * y_to_minus_s;
                for (int i = 0; i <= k; ++i) {
                    if (i > 0) fact_ratio *= (k - i + 1);
                    integral += fact_ratio * pow(log_y, k - i) * y_pow / pow(s - 1, i + 1);
                }
                integral *= sign / p_real;
            }
            auto g_derivative = [&](int r) {
                return sign * ratio_pow[static_cast<std::size_t>(r)] *
                       eval_log_poly(dk[static_cast<std::size_t>(r)], log_y) * y_to_minus_s;
            };
            const Real g0 = g_derivative(0);
            Real tail = integral + g0 / 2;
            Real last = abs(g0);
            Real omitted = 0;
            for (int j = 1; j <= kMaxBernoulli; ++j) {
                const Real term = bernoulli_weights[static_cast<std::size_t>(j - 1)] * g_derivative(2 * j - 1);
                const Real mag = abs(term);
                if (mag > last && j > 2) {  // asymptotic series started diverging
                    omitted = last;
                    break;
                }
                tail -= term;
                last = mag;
                omitted = mag;
                if (mag < target * 1e-3) break;
            }
            result[static_cast<std::size_t>(k)].value += Real(c) * tail;
            tail_error[static_cast<std::size_t>(k)] += abs(Real(c)) * omitted;
        }
    }

    const Real rounding = max_head_term * Real(head_end + period * 2 * kMaxBernoulli) * ulp_scale(kWorkingBits - 2);
    for (int k = 0; k <= max_order; ++k) {
        auto& r = result[static_cast<std::size_t>(k)];
        r.error = tail_error[static_cast<std::size_t>(k)] +
                  rounding * pow(Real(1) + log(Real(head_end)), k);
    }
    return result;
}

std::vector<Approx> l_function_derivatives(std::int64_t d, const Real& s, int max_order,
                                           int precision_bits) {
    if (d == 1) {
        const int one[1] = {1};
        return periodic_dirichlet_series(std::span<const int>(one, 1), s, max_order, precision_bits);
    }
    if (!is_fundamental_discriminant(d))
        throw std::invalid_argument("l_function_derivatives: " + std::to_string(d) +
                                    " is not a fundamental discriminant");
    const std::int64_t period = d < 0 ? -d : d;
    std::vector<int> chi(static_cast<std::size_t>(period));
    for (std::int64_t r = 0; r < period; ++r) chi[static_cast<std::size_t>(r)] = kronecker(d, r);
    return periodic_dirichlet_series(chi, s, max_order, precision_bits);
}

}  // namespace tracecoeff
