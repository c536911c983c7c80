#include "doctest.h"
#include "oracle_values.hpp"
#include "tracecoeff/coefficients.hpp"
#include "tracecoeff/verification.hpp"

#include <random>

using namespace tracecoeff;

namespace {

PlaceSet places(const NumberField& f, std::vector<std::int64_t> primes = {}) { return place_set(f, primes); }

IntMatrix2 mat(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
    return {{{Rational(a), Rational(b)}, {Rational(c), Rational(d)}}};
}

Real product_of(const CoefficientValue& c) {
    Real p = 1;
    for (const auto& f : c.breakdown) p *= f.value;
    return p;
}

}  // namespace

TEST_CASE("partial Laurent data") {
    const auto q = rational_field();
    const auto base = laurent_data(q);
    const auto same = partial_laurent(base, places(q));
    CHECK(same.lambda_m1_s == base.lambda_m1);
    CHECK(same.lambda_0_s == base.lambda_0);
    CHECK(same.lambda_1_s == base.lambda_1);

    const auto two = partial_laurent(places(q, {2}));
    CHECK(close_to(two.lambda_m1_s, Real(1) / 2, 1e-35));
    CHECK(close_to(two.lambda_0_s, (oracle::value(oracle::euler_gamma) + log(Real(2))) / 2, 1e-35));
    // Third coefficient by expanding (1 - 2^{-s}) zeta(s) at s = 1 by hand.
    const Real l2 = log(Real(2));
    const Real g = oracle::value(oracle::euler_gamma);
    const Real g1 = oracle::value(oracle::stieltjes_gamma1);
    CHECK(close_to(two.lambda_1_s, -g1 / 2 + l2 * g / 2 - l2 * l2 / 4, 1e-33));
}

TEST_CASE("partial Laurent identity on random field and place choices") {
    std::mt19937_64 rng(5);
    const std::vector<NumberField> fields{rational_field(), quadratic_field(-1), quadratic_field(-3),
                                          quadratic_field(5), quadratic_field(-5), quadratic_field(13)};
    const std::vector<std::int64_t> primes{2, 3, 5, 7, 11, 13};
    for (int t = 0; t < 20; ++t) {
        const auto& f = fields[rng() % fields.size()];
        std::vector<std::int64_t> s;
        for (auto p : primes)
            if (rng() % 3 == 0) s.push_back(p);
        const auto pl = partial_laurent(places(f, s));
        const auto routes = gl2_regular_routes(pl);
        CAPTURE(f.label);
        CHECK(close_to(routes.identity_lhs, routes.identity_rhs, 1e-30));
        CHECK(close_to(routes.identity_rhs, local_log_derivative_sum(pl.places), 1e-35));
    }
}

TEST_CASE("volumes") {
    const auto q = rational_field();
    CHECK(volume_gl(q, 1) == 1);
    CHECK(close_to(volume_gl(q, 2), oracle::value(oracle::zeta2), 1e-33));
    CHECK(close_to(volume_gl(q, 3), oracle::value(oracle::zeta2) * oracle::value(oracle::zeta3), 1e-33));
    const auto gi = quadratic_field(-1);
    CHECK(close_to(volume_gl(gi, 2), pi() / 4 * oracle::value(oracle::zeta2) * oracle::value(oracle::l2_m4), 1e-32));
    CHECK_THROWS(volume_gl(q, 0));
}

TEST_CASE("GL2 regular coefficient") {
    const auto q = rational_field();
    auto c = coeff_gl2_regular(places(q));
    CHECK(close_to(c.value, oracle::value(oracle::euler_gamma), 1e-12));
    CHECK(close_to(c.value, oracle::value(oracle::euler_gamma), 1e-35));
    CHECK(c.eta == 1);
    c = coeff_gl2_regular(places(q, {2}));
    CHECK(close_to(c.value, oracle::value(oracle::euler_gamma) + log(Real(2)), 1e-35));
    CHECK(close_to(coeff_gl2_regular_additive(places(q, {2})), c.value, 1e-35));
    const auto gi = quadratic_field(-1);
    const Real l = oracle::value(oracle::l1_m4);
    c = coeff_gl2_regular(places(gi));
    CHECK(close_to(c.value, l * l * oracle::value(oracle::lambda0_m4) / l, 1e-30));
    CHECK(close_to(product_of(c), c.value, 1e-35));
}

TEST_CASE("GL3 coefficients over Q") {
    const auto s = places(rational_field());
    const Real g = oracle::value(oracle::euler_gamma);
    const Real g1 = oracle::value(oracle::stieltjes_gamma1);
    const auto reg = coeff_gl3(s, Gl3Class::regular);
    CHECK(close_to(reg.value, g * g - g1, 1e-30));
    CHECK(close_to(reg.value, Real("0.40599376929139539918"), 1e-18));
    CHECK(reg.eta == 2);
    const auto sub = coeff_gl3(s, Gl3Class::subregular);
    CHECK(close_to(sub.value, oracle::value(oracle::zeta2_prime), 1e-30));
    CHECK(sub.eta == 1);
    const auto triv = coeff_gl3(s, Gl3Class::trivial);
    CHECK(close_to(triv.value, oracle::value(oracle::zeta2) * oracle::value(oracle::zeta3), 1e-30));
    CHECK(triv.eta == 0);
    for (const auto& c : {reg, sub, triv}) CHECK(close_to(product_of(c), c.value, 1e-35));
}

TEST_CASE("GL3 subregular coefficient with finite places") {
    const auto s = places(rational_field(), {2, 3});
    const auto sub = coeff_gl3(s, Gl3Class::subregular);
    Real sum = 0;
    for (int q : {2, 3}) sum += log(Real(q)) / (Real(q) * q - 1);
    const Real z2 = oracle::value(oracle::zeta2);
    CHECK(close_to(sub.value, z2 * (oracle::value(oracle::zeta2_prime) / z2 + sum), 1e-30));
}

TEST_CASE("unipotent coefficients by Jordan type") {
    const auto s = places(quadratic_field(-3), {7});
    CHECK(coeff_unipotent(s, Partition({1})).value == coeff_gl1(s).value);
    CHECK(coeff_unipotent(s, Partition({2})).value == coeff_gl2_regular(s).value);
    CHECK(coeff_unipotent(s, Partition({1, 1})).value == coeff_gl2_trivial(s).value);
    CHECK(coeff_unipotent(s, Partition({2, 1})).value == coeff_gl3(s, Gl3Class::subregular).value);
    CHECK_THROWS(coeff_unipotent(s, Partition({4})));
}

TEST_CASE("Levi factorization") {
    const auto s = places(rational_field());
    const auto gl2 = coeff_gl2_regular(s);
    const auto gl1 = coeff_gl1(s);
    auto c = coeff_factorize(Composition({2, 1}), {gl2, gl1});
    CHECK(close_to(c.value, oracle::value(oracle::euler_gamma), 1e-35));
    CHECK(c.n == 3);
    c = coeff_factorize(Composition({1, 1}), {gl1, gl1});
    CHECK(c.value == 1);
    const auto gl3 = coeff_gl3(s, Gl3Class::regular);
    c = coeff_factorize(Composition({3, 2}), {gl3, gl2});
    CHECK(close_to(c.value, gl3.value * gl2.value, 1e-35));
    CHECK_THROWS(coeff_factorize(Composition({2, 1}), {gl1, gl2}));
    CHECK_THROWS(coeff_factorize(Composition({1, 1}), {gl1, coeff_gl1(places(quadratic_field(-1)))}));
}

TEST_CASE("Levi factorization is associative and order independent") {
    const auto s = places(quadratic_field(-7), {2});
    const auto a = coeff_gl2_regular(s);
    const auto b = coeff_gl1(s);
    const auto c = coeff_gl3(s, Gl3Class::subregular);
    const auto abc = coeff_factorize(Composition({2, 1, 3}), {a, b, c});
    const auto cba = coeff_factorize(Composition({3, 1, 2}), {c, b, a});
    const auto ab = coeff_factorize(Composition({2, 1}), {a, b});
    CHECK(close_to(abc.value, cba.value, 1e-35));
    CHECK(close_to(abc.value, ab.value * c.value, 1e-35));
    CHECK(abc.breakdown.size() == cba.breakdown.size());
}

TEST_CASE("general GL2 coefficients over Q") {
    const auto s = places(rational_field());
    auto r = coeff_general_gl2(mat(0, -1, 1, 0), s);
    CHECK(r.kind == GeneralKind::elliptic);
    CHECK(close_to(r.coefficient.value, pi() / 4, 1e-10));
    REQUIRE(r.elliptic.has_value());
    CHECK(r.elliptic->extension_disc == 4);
    CHECK(r.elliptic->discr_norm == 4);
    CHECK(r.discriminant_check);

    r = coeff_general_gl2(mat(1, 0, 0, 2), s);
    CHECK(r.kind == GeneralKind::split);
    CHECK(r.coefficient.value == 0);

    r = coeff_general_gl2(mat(1, 0, 0, 1), s);
    CHECK(r.kind == GeneralKind::central);
    CHECK(close_to(r.coefficient.value, oracle::value(oracle::zeta2), 1e-33));

    r = coeff_general_gl2(mat(1, 1, 0, 1), s);
    CHECK(r.kind == GeneralKind::central_unipotent);
    CHECK(close_to(r.coefficient.value, oracle::value(oracle::euler_gamma), 1e-33));

    // x^2 - x + 1: E = Q(sqrt -3).
    r = coeff_general_gl2(mat(0, -1, 1, 1), s);
    CHECK(r.kind == GeneralKind::elliptic);
    CHECK(close_to(r.coefficient.value, oracle::value(oracle::l1_m3), 1e-30));
    // x^2 - 20: disc 80, E = Q(sqrt 5), D_E = 5 <= 80.
    r = coeff_general_gl2(mat(0, 20, 1, 0), s);
    CHECK(r.elliptic->extension_disc == 5);
    CHECK(r.elliptic->discr_norm == 80);
    CHECK(close_to(r.coefficient.value, oracle::value(oracle::l1_5), 1e-30));

    CHECK_THROWS(coeff_general_gl2(mat(0, -1, 1, 0), places(quadratic_field(-1))));
    CHECK_THROWS(coeff_general_gl2(mat(0, 0, 0, 0), s));
}

TEST_CASE("general GL2 coefficients are scaling invariant") {
    const auto s = places(rational_field(), {3});
    std::mt19937_64 rng(11);
    for (int t = 0; t < 40; ++t) {
        auto entry = [&] { return static_cast<std::int64_t>(rng() % 11) - 5; };
        const auto g = mat(entry(), entry(), entry(), entry());
        if (g[0][0] * g[1][1] - g[0][1] * g[1][0] == 0) continue;
        const auto base = coeff_general_gl2(g, s);
        for (const Rational& alpha : {Rational(-1), Rational(2), Rational(-2), Rational(3), Rational(1, 2)}) {
            IntMatrix2 h = g;
            for (auto& row : h)
                for (auto& x : row) x *= alpha;
            const auto scaled = coeff_general_gl2(h, s);
            CHECK(scaled.kind == base.kind);
            CHECK(scaled.coefficient.value == base.coefficient.value);
            CHECK(scaled.normalized == base.normalized);
            if (base.elliptic) CHECK(scaled.elliptic->extension_disc == base.elliptic->extension_disc);
            CHECK(scaled.discriminant_check);
        }
    }
}

TEST_CASE("elliptic discriminant inequality on many matrices") {
    const auto s = places(rational_field());
    for (std::int64_t a = -4; a <= 4; ++a)
        for (std::int64_t b = -4; b <= 4; ++b)
            for (std::int64_t c = -4; c <= 4; ++c) {
                const auto g = mat(a, b, c, 1);
                if (a - b * c == 0) continue;
                const auto r = coeff_general_gl2(g, s);
                if (r.elliptic) REQUIRE(BigInt(r.elliptic->extension_disc) <= r.elliptic->discr_norm);
            }
}

TEST_CASE("bound right-hand side") {
    const auto q = rational_field();
    CHECK(bound_rhs(places(q), 3, Real("0.7"), 1) == 1);
    CHECK(close_to(bound_rhs(places(q, {2}), 1, 0, 1), 1 + log(Real(2)), 1e-35));
    const auto gi = quadratic_field(-1);
    const auto s = places(gi, {2, 5});
    CHECK(s.finite_places.size() == 3);
    CHECK(close_to(bound_rhs(s, 2, Real(1), 1), 4 * zeta_factor(s.finite_places, 2).value, 1e-35));
}

TEST_CASE("bound right-hand side is monotone") {
    const auto f = quadratic_field(-7);
    const std::vector<std::vector<std::int64_t>> sets{{}, {2}, {2, 3}, {2, 3, 5}};
    for (std::size_t i = 0; i < sets.size(); ++i) {
        const auto s = places(f, sets[i]);
        for (int eta = 0; eta < 4; ++eta) {
            const Real base = bound_rhs(s, eta, Real("0.5"), Real(2));
            CHECK(bound_rhs(s, eta + 1, Real("0.5"), Real(2)) >= base);
            CHECK(bound_rhs(s, eta, Real("0.6"), Real(2)) >= base);
            CHECK(bound_rhs(s, eta, Real("0.5"), Real(3)) >= base);
            if (i + 1 < sets.size()) CHECK(bound_rhs(places(f, sets[i + 1]), eta, Real("0.5"), Real(2)) >= base);
        }
    }
}

TEST_CASE("conjecture ratio reports") {
    const auto q = places(rational_field());
    auto r = conjecture_ratio_report(q, 2, Partition({2}));
    CHECK(close_to(r.ratio, oracle::value(oracle::euler_gamma), 1e-33));
    CHECK(r.zeta_factor == 1);
    CHECK(close_to(r.constant, oracle::value(oracle::euler_gamma), 1e-33));
    r = conjecture_ratio_report(q, 3, Partition({2, 1}));
    CHECK(close_to(r.ratio, oracle::value(oracle::zeta2_prime) / oracle::value(oracle::zeta2), 1e-33));
    CHECK(r.richardson == Partition({2, 1}));
    CHECK(r.eta == 1);
    for (const auto& f : imaginary_quadratic_family(200)) {
        const auto sr = conjecture_ratio_report(places(f), 3, Partition({2, 1}), 64);
        CHECK(abs(sr.ratio) < 2);
    }
    CHECK_THROWS(conjecture_ratio_report(q, 4, Partition({4})));
}

TEST_CASE("conjecture sweep is deterministic and sorted") {
    const auto fam = imaginary_quadratic_family(120);
    const auto a = conjecture_sweep(fam, {2}, 2, Partition({2}), 64, 4);
    const auto b = conjecture_sweep(fam, {2}, 2, Partition({2}), 64, 1);
    REQUIRE(a.rows.size() == fam.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        CHECK(a.rows[i].field_label == b.rows[i].field_label);
        CHECK(a.rows[i].value == b.rows[i].value);
        if (i) CHECK(std::abs(a.rows[i - 1].disc) <= std::abs(a.rows[i].disc));
    }
    CHECK(a.fitted_kappa == b.fitted_kappa);
    for (const auto& row : a.rows) CHECK(row.constant <= a.fitted_c * pow(Real(std::abs(row.disc)), a.fitted_kappa) * (1 + Real("1e-15")));
}
