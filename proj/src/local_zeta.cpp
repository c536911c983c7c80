#include "tracecoeff/local_zeta.hpp"

#include <stdexcept>

namespace tracecoeff {

namespace {

constexpr int kMemoRows = 16;

std::vector<BigInt> next_eulerian_row(const std::vector<BigInt>& prev, int m) {
    // A(m,k) = (k+1) A(m-1,k) + (m-k) A(m-1,k-1)
    std::vector<BigInt> row(static_cast<std::size_t>(m), BigInt(0));
    for (int k = 0; k < m; ++k) {
        BigInt v = 0;
        if (k < static_cast<int>(prev.size())) v += BigInt(k + 1) * prev[static_cast<std::size_t>(k)];
        if (k >= 1 && k - 1 < static_cast<int>(prev.size())) v += BigInt(m - k) * prev[static_cast<std::size_t>(k - 1)];
        row[static_cast<std::size_t>(k)] = v;
    }
    return row;
}

const std::vector<std::vector<BigInt>>& eulerian_memo() {
    static const std::vector<std::vector<BigInt>> table = [] {
        std::vector<std::vector<BigInt>> t{{BigInt(1)}};
        for (int m = 1; m <= kMemoRows; ++m) t.push_back(next_eulerian_row(t.back(), m));
        return t;
    }();
    return table;
}

Rational power(const Rational& x, int e) {
    Rational out = 1;
    for (int i = 0; i < e; ++i) out *= x;
    return out;
}

void check_q(std::int64_t q) {
    if (q < 2) throw std::invalid_argument("local zeta: q must be >= 2");
}

LogMonomial multiply(const LogMonomial& a, const LogMonomial& b) {
    LogMonomial out;
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            out.push_back(b[j++]);
        } else {
            out.emplace_back(a[i].first, a[i].second + b[j].second);
            ++i;
            ++j;
        }
    }
    return out;
}

LogPolynomial multiply(const LogPolynomial& a, const LogPolynomial& b) {
    LogPolynomial out;
    for (const auto& [ma, ca] : a)
        for (const auto& [mb, cb] : b) out[multiply(ma, mb)] += ca * cb;
    return out;
}

LogPolynomial ratio_term(std::int64_t q, int s) {
    const LogPowerValue r = log_derivative_ratio(q, s);
    LogMonomial mono;
    if (s > 0) mono.emplace_back(q, s);
    return {{mono, r.coefficient}};
}

ZetaFactor finish(LogPolynomial p) {
    std::erase_if(p, [](const auto& kv) { return kv.second == 0; });
    ZetaFactor out{std::move(p), Real(0)};
    out.value = evaluate(out.symbolic);
    return out;
}

}  // namespace

bool is_prime_power(std::int64_t q) {
    if (q < 2) return false;
    std::int64_t p = 2;
    while (p * p <= q && q % p != 0) ++p;
    if (q % p != 0) return true;  // q itself is prime
    while (q % p == 0) q /= p;
    return q == 1;
}

std::vector<BigInt> eulerian_row(int m) {
    if (m < 0) throw std::invalid_argument("eulerian_row: negative order");
    const auto& memo = eulerian_memo();
    if (m <= kMemoRows) return memo[static_cast<std::size_t>(m)];
    std::vector<BigInt> row = memo.back();
    for (int k = kMemoRows + 1; k <= m; ++k) row = next_eulerian_row(row, k);
    return row;
}

Real LocalZetaValue::numeric() const {
    return pow(-log(Real(q)), log_power) * to_real(rational_part);
}

LocalZetaValue local_value(std::int64_t q, int m) {
    check_q(q);
    if (m < 0) throw std::invalid_argument("local_value: negative derivative order");
    const Rational x(1, q);
    const Rational one_minus = 1 - x;
    Rational part;
    if (m == 0) {
        part = 1 / one_minus;
    } else {
        // sum k^m x^k = x A_m(x) / (1 - x)^{m+1}
        const auto row = eulerian_row(m);
        Rational a = 0;
        for (std::size_t k = row.size(); k-- > 0;) a = a * x + Rational(row[k]);
        part = x * a / power(one_minus, m + 1);
    }
    return {q, m, part, m};
}

LogPowerValue log_derivative_ratio(std::int64_t q, int m) {
    check_q(q);
    if (m == 0) return {Rational(1), 0};
    return {local_value(q, m).rational_part / local_value(q, 0).rational_part, m};
}

RatioLemmaReport verify_ratio_lemma(std::int64_t q, int m1, int m2) {
    check_q(q);
    if (m1 < 0 || m2 < 0) throw std::invalid_argument("verify_ratio_lemma: orders must be >= 0");
    if (m1 == 0 || m2 == 0) {
        // The ratio collapses to |zeta_v(1)| = q/(q-1).
        const Rational z = local_value(q, 0).rational_part;
        return {z <= 2, z, Rational(2), 0};
    }
    const Rational lhs = local_value(q, m1).rational_part * local_value(q, m2).rational_part;
    const Rational rhs = Rational(BigInt(1) << (2 * (m1 + m2) + 2)) * local_value(q, m1 + m2).rational_part;
    return {lhs <= rhs, lhs, rhs, m1 + m2};
}

Real evaluate(const LogPolynomial& p) {
    Real out = 0;
    for (const auto& [mono, c] : p) {
        Real term = to_real(c);
        for (const auto& [q, e] : mono) term *= pow(log(Real(q)), e);
        out += term;
    }
    return out;
}

std::string to_string(const LogMonomial& m) {
    if (m.empty()) return "1";
    std::string out;
    for (const auto& [q, e] : m) {
        if (!out.empty()) out += "*";
        out += "log(" + std::to_string(q) + ")";
        if (e != 1) out += "^" + std::to_string(e);
    }
    return out;
}

ZetaFactor zeta_factor(const std::vector<std::int64_t>& q_values, int eta) {
    if (eta < 0) throw std::invalid_argument("zeta_factor: eta must be >= 0");
    // Coefficient i of the running product collects tuples with sum s_v = i.
    std::vector<LogPolynomial> acc(static_cast<std::size_t>(eta) + 1);
    acc[0][LogMonomial{}] = 1;
    for (auto q : q_values) {
        check_q(q);
        std::vector<LogPolynomial> local;
        for (int s = 0; s <= eta; ++s) local.push_back(ratio_term(q, s));
        std::vector<LogPolynomial> next(acc.size());
        for (int i = 0; i <= eta; ++i)
            for (int j = 0; i + j <= eta; ++j) {
                if (acc[static_cast<std::size_t>(i)].empty()) continue;
                for (auto& [mono, c] : multiply(acc[static_cast<std::size_t>(i)], local[static_cast<std::size_t>(j)]))
                    next[static_cast<std::size_t>(i + j)][mono] += c;
            }
        acc = std::move(next);
    }
    LogPolynomial total;
    for (const auto& level : acc)
        for (const auto& [mono, c] : level) total[mono] += c;
    return finish(std::move(total));
}

ZetaFactor zeta_factor(const std::vector<FinitePlace>& places, int eta) {
    std::vector<std::int64_t> qs;
    for (const auto& v : places) qs.push_back(v.q);
    return zeta_factor(qs, eta);
}

ZetaFactor zeta_factor_brute_force(const std::vector<std::int64_t>& q_values, int eta) {
    if (eta < 0) throw std::invalid_argument("zeta_factor_brute_force: eta must be >= 0");
    LogPolynomial total;
    std::vector<int> tuple(q_values.size(), 0);
    for (;;) {
        int sum = 0;
        for (int s : tuple) sum += s;
        if (sum <= eta) {
            LogPolynomial term{{LogMonomial{}, Rational(1)}};
            for (std::size_t i = 0; i < tuple.size(); ++i) term = multiply(term, ratio_term(q_values[i], tuple[i]));
            for (const auto& [mono, c] : term) total[mono] += c;
        }
        std::size_t i = 0;
        while (i < tuple.size() && tuple[i] == eta) tuple[i++] = 0;
        if (i == tuple.size()) break;
        ++tuple[i];
    }
    return finish(std::move(total));
}

SandwichReport ratio_sandwich(std::int64_t q_max, int s_max) {
    if (q_max < 2 || s_max < 1) throw std::invalid_argument("ratio_sandwich: need q_max >= 2 and s_max >= 1");
    SandwichReport out{};
    bool first = true;
    for (std::int64_t q = 2; q <= q_max; ++q) {
        if (!is_prime_power(q)) continue;
        for (int s = 1; s <= s_max; ++s) {
            const Rational v = log_derivative_ratio(q, s).coefficient * (q - 1);
            if (first || v < out.min_value) {
                out.min_value = v;
                out.argmin_q = q;
                out.argmin_s = s;
            }
            if (first || v > out.max_value) {
                out.max_value = v;
                out.argmax_q = q;
                out.argmax_s = s;
            }
            first = false;
        }
    }
    return out;
}

}  // namespace tracecoeff
