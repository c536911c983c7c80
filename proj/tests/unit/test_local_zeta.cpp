#include "doctest.h"
#include "oracle_values.hpp"
#include "tracecoeff/local_zeta.hpp"

#include <random>

using namespace tracecoeff;

namespace {

// sum_{k >= 0} k^m x^k by direct summation in exact rationals, truncated where the tail
// is below 2^-200; only used with x <= 1/2.
Real power_series_oracle(std::int64_t q, int m) {
    Real sum = 0;
    const Real x = Real(1) / q;
    Real xk = 1;
    for (int k = 0; k < 2000; ++k) {
        sum += pow(Real(k), m) * xk;
        xk *= x;
    }
    return sum;
}

}  // namespace

TEST_CASE("local factor derivatives") {
    auto v = local_value(2, 0);
    CHECK(v.rational_part == 2);
    CHECK(v.numeric() == 2);
    v = local_value(2, 1);
    CHECK(v.rational_part == 2);
    CHECK(close_to(v.numeric(), -2 * log(Real(2)), 1e-35));
    v = local_value(3, 2);
    CHECK(v.rational_part == Rational(3, 2));
    CHECK(close_to(v.numeric(), Real(3) / 2 * pow(log(Real(3)), 2), 1e-35));
}

TEST_CASE("Eulerian rational parts agree with direct power sums") {
    for (std::int64_t q : {2, 3, 4, 5, 7, 8, 9, 11, 16, 25, 27, 97}) {
        for (int m = 0; m <= 8; ++m) {
            CAPTURE(q);
            CAPTURE(m);
            CHECK(close_to(to_real(local_value(q, m).rational_part), power_series_oracle(q, m), 1e-30));
        }
    }
    CHECK(eulerian_row(3) == std::vector<BigInt>{1, 4, 1});
    CHECK(eulerian_row(4) == std::vector<BigInt>{1, 11, 11, 1});
}

TEST_CASE("log derivative ratios") {
    auto r = log_derivative_ratio(2, 1);
    CHECK(r.coefficient == 1);
    CHECK(r.log_power == 1);
    r = log_derivative_ratio(5, 1);
    CHECK(r.coefficient == Rational(1, 4));
    r = log_derivative_ratio(3, 1);
    CHECK(r.coefficient == Rational(1, 2));
    for (std::int64_t q : {2, 3, 4, 5, 49}) CHECK(log_derivative_ratio(q, 0).coefficient == 1);
}

TEST_CASE("rational parts are positive and decrease in q") {
    std::vector<std::int64_t> qs;
    for (std::int64_t q = 2; q <= 100; ++q)
        if (is_prime_power(q)) qs.push_back(q);
    for (int m = 0; m <= 6; ++m) {
        for (std::size_t i = 0; i < qs.size(); ++i) {
            const auto v = local_value(qs[i], m);
            CHECK(v.rational_part > 0);
            if (m >= 1 && i > 0) CHECK(v.rational_part < local_value(qs[i - 1], m).rational_part);
        }
    }
}

TEST_CASE("ratio lemma with the explicit constant") {
    const auto r = verify_ratio_lemma(2, 1, 1);
    CHECK(r.holds);
    CHECK(r.lhs <= r.rhs);
    const auto boundary = verify_ratio_lemma(2, 0, 3);
    CHECK(boundary.holds);
    CHECK(boundary.lhs == 2);
    CHECK(boundary.rhs == 2);
    for (std::int64_t q = 2; q <= 100; ++q) {
        if (!is_prime_power(q)) continue;
        for (int m1 = 0; m1 <= 6; ++m1)
            for (int m2 = 0; m1 + m2 <= 6; ++m2) CHECK(verify_ratio_lemma(q, m1, m2).holds);
    }
}

TEST_CASE("zeta factor small cases") {
    CHECK(zeta_factor(std::vector<std::int64_t>{}, 3).value == 1);
    CHECK(close_to(zeta_factor(std::vector<std::int64_t>{2}, 1).value, 1 + log(Real(2)), 1e-35));
    const auto two_three = zeta_factor(std::vector<std::int64_t>{2, 3}, 1);
    CHECK(close_to(two_three.value, 1 + log(Real(2)) + log(Real(3)) / 2, 1e-35));
    CHECK(two_three.symbolic.size() == 3);
}

TEST_CASE("truncated product equals tuple enumeration") {
    const std::vector<std::int64_t> pool{2, 3, 4, 5};
    std::vector<std::int64_t> qs;
    // All multisets of size <= 4 from the pool.
    std::function<void(std::size_t)> rec = [&](std::size_t start) {
        for (int eta = 0; eta <= 4; ++eta) CHECK(zeta_factor(qs, eta).symbolic == zeta_factor_brute_force(qs, eta).symbolic);
        if (qs.size() == 4) return;
        for (std::size_t i = start; i < pool.size(); ++i) {
            qs.push_back(pool[i]);
            rec(i);
            qs.pop_back();
        }
    };
    rec(0);
}

TEST_CASE("zeta factor is monotone in eta and in places") {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 30; ++t) {
        std::vector<std::int64_t> qs;
        const int count = static_cast<int>(rng() % 4);
        for (int i = 0; i < count; ++i) qs.push_back(std::int64_t{2} + static_cast<std::int64_t>(rng() % 6));
        for (int eta = 0; eta < 4; ++eta) {
            const Real here = zeta_factor(qs, eta).value;
            CHECK(zeta_factor(qs, eta + 1).value >= here);
            auto more = qs;
            more.push_back(7);
            CHECK(zeta_factor(more, eta).value >= here);
        }
    }
}

TEST_CASE("symbolic and numeric zeta factors agree") {
    const std::vector<std::int64_t> qs{2, 4, 9};
    const auto z = zeta_factor(qs, 3);
    CHECK(close_to(evaluate(z.symbolic), z.value, 1e-35));
}

TEST_CASE("ratio sandwich is finite and positive") {
    const auto s = ratio_sandwich(100, 6);
    CHECK(s.min_value > 0);
    CHECK(s.max_value >= s.min_value);
}
