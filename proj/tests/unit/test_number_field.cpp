#include "doctest.h"
#include "oracle_values.hpp"
#include "tracecoeff/dirichlet.hpp"
#include "tracecoeff/number_field.hpp"
#include "tracecoeff/verification.hpp"

#include <cstdio>
#include <filesystem>
#include <sstream>

using namespace tracecoeff;

TEST_CASE("quadratic field invariants") {
    const auto gi = quadratic_field(-1);
    CHECK(gi.disc == -4);
    CHECK(gi.signature == Signature{0, 1});
    CHECK(gi.class_number == 1);
    CHECK(gi.roots_of_unity == 4);
    CHECK(gi.regulator == 1);

    const auto q5 = quadratic_field(5);
    CHECK(q5.disc == 5);
    CHECK(q5.signature == Signature{2, 0});
    CHECK(q5.class_number == 1);
    CHECK(close_to(q5.regulator, oracle::value(oracle::log_golden_ratio), 1e-35));

    const auto q_m5 = quadratic_field(-5);
    CHECK(q_m5.disc == -20);
    CHECK(q_m5.class_number == 2);
    CHECK(q_m5.roots_of_unity == 2);
    const auto forms = reduced_forms(-20);
    REQUIRE(forms.size() == 2);
    CHECK(forms[0] == QuadraticForm{1, 0, 5});
    CHECK(forms[1] == QuadraticForm{2, 2, 3});

    CHECK(quadratic_field(-3).roots_of_unity == 6);
    CHECK_THROWS_AS(quadratic_field(12), std::invalid_argument);
    CHECK_THROWS_AS(quadratic_field(1), std::invalid_argument);
}

TEST_CASE("class numbers of small discriminants") {
    // Counts of reduced forms, cross-checked by hand for the small ones.
    CHECK(imaginary_class_number(-3) == 1);
    CHECK(imaginary_class_number(-23) == 3);
    CHECK(imaginary_class_number(-47) == 5);
    CHECK(imaginary_class_number(-71) == 7);
    CHECK(imaginary_class_number(-163) == 1);
    CHECK(imaginary_class_number(-84) == 4);
    CHECK(quadratic_field(10).class_number == 2);
    CHECK(quadratic_field(79).class_number == 3);
    CHECK(quadratic_field(2).class_number == 1);
}

TEST_CASE("residue from the class number formula") {
    CHECK(residue(rational_field()) == 1);
    CHECK(close_to(residue(quadratic_field(-1)), pi() / 4, 1e-35));
    CHECK(close_to(residue(quadratic_field(5)), oracle::value(oracle::l1_5), 1e-35));
    CHECK(close_to(residue(quadratic_field(-5)), oracle::value(oracle::l1_m20), 1e-35));
    CHECK(close_to(residue(quadratic_field(2)), oracle::value(oracle::l1_8), 1e-35));
}

TEST_CASE("L-function derivatives at s = 1 against the mpmath oracle") {
    const auto m4 = l_function_derivatives(-4, Real(1), 2, 128);
    CHECK(close_to(m4[0].value, oracle::value(oracle::l1_m4), 1e-33));
    CHECK(close_to(m4[1].value, oracle::value(oracle::l1_prime_m4), 1e-33));
    CHECK(close_to(m4[2].value, oracle::value(oracle::l1_second_m4), 1e-33));
    const auto p5 = l_function_derivatives(5, Real(1), 2, 128);
    CHECK(close_to(p5[0].value, oracle::value(oracle::l1_5), 1e-33));
    CHECK(close_to(p5[1].value, oracle::value(oracle::l1_prime_5), 1e-33));
    CHECK(close_to(p5[2].value, oracle::value(oracle::l1_second_5), 1e-33));
    for (const auto& a : m4) CHECK(a.error < Real("1e-30"));
}

TEST_CASE("Laurent data of Q and quadratic fields") {
    const auto q = laurent_data(rational_field());
    CHECK(q.lambda_m1 == 1);
    CHECK(close_to(q.lambda_0, oracle::value(oracle::euler_gamma), 1e-35));
    CHECK(close_to(q.lambda_1, -oracle::value(oracle::stieltjes_gamma1), 1e-35));

    struct Case {
        std::int64_t m;
        const char* lm1;
        const char* l0;
        const char* l1;
    };
    for (const auto& c : {Case{-1, oracle::l1_m4, oracle::lambda0_m4, oracle::lambda1_m4},
                          Case{-3, oracle::l1_m3, oracle::lambda0_m3, oracle::lambda1_m3},
                          Case{5, oracle::l1_5, oracle::lambda0_5, oracle::lambda1_5}}) {
        CAPTURE(c.m);
        const auto l = laurent_data(quadratic_field(c.m));
        CHECK(close_to(l.lambda_m1, oracle::value(c.lm1), 1e-30));
        CHECK(close_to(l.lambda_0, oracle::value(c.l0), 1e-30));
        CHECK(close_to(l.lambda_1, oracle::value(c.l1), 1e-30));
    }
}

TEST_CASE("residue agrees with lambda_m1 within the error bound") {
    for (const auto& f : imaginary_quadratic_family(200)) {
        const auto l = laurent_data(f, 96);
        CAPTURE(f.label);
        CHECK(abs(l.lambda_m1 - residue(f)) <= l.error_m1 + Real("1e-25"));
    }
    for (const auto& f : real_quadratic_family(200)) {
        const auto l = laurent_data(f, 96);
        CAPTURE(f.label);
        CHECK(abs(l.lambda_m1 - residue(f)) <= l.error_m1 + Real("1e-25"));
        CHECK(residue(f) > 0);
    }
}

TEST_CASE("Dedekind zeta at s = 2") {
    const auto q = dedekind_zeta(rational_field(), Real(2), 1);
    CHECK(close_to(q[0].value, oracle::value(oracle::zeta2), 1e-33));
    CHECK(close_to(q[1].value, oracle::value(oracle::zeta2_prime), 1e-33));
    const auto gi = dedekind_zeta(quadratic_field(-1), Real(2), 1);
    const Real z2 = oracle::value(oracle::zeta2);
    const Real g = oracle::value(oracle::l2_m4);
    CHECK(close_to(gi[0].value, z2 * g, 1e-32));
    CHECK(close_to(gi[1].value, oracle::value(oracle::zeta2_prime) * g + z2 * oracle::value(oracle::l2_prime_m4),
                   1e-32));
    const auto eis = dedekind_zeta(quadratic_field(-3), Real(2), 0);
    CHECK(close_to(eis[0].value, z2 * oracle::value(oracle::l2_m3), 1e-32));
    CHECK_THROWS_AS(dedekind_zeta(rational_field(), Real(1), 0), std::domain_error);
}

TEST_CASE("places above a rational prime") {
    const auto gi = quadratic_field(-1);
    const auto five = places_above(gi, 5);
    REQUIRE(five.size() == 2);
    for (const auto& v : five) {
        CHECK(v.q == 5);
        CHECK(v.different_norm == 1);
    }
    CHECK(five[0].index != five[1].index);
    const auto three = places_above(gi, 3);
    REQUIRE(three.size() == 1);
    CHECK(three[0].q == 9);
    const auto two = places_above(gi, 2);
    REQUIRE(two.size() == 1);
    CHECK(two[0].q == 2);
    CHECK(two[0].different_norm == 4);
    CHECK_THROWS(places_above(gi, 4));
}

TEST_CASE("ramified different norms multiply to the discriminant") {
    auto check = [](const NumberField& f) {
        std::int64_t product = 1;
        for (std::int64_t p = 2; p <= f.abs_disc(); ++p) {
            if (!is_prime(p)) continue;
            for (const auto& v : places_above(f, p)) product *= v.different_norm;
        }
        CAPTURE(f.label);
        CHECK(product == f.abs_disc());
    };
    for (const auto& f : imaginary_quadratic_family(300)) check(f);
    for (const auto& f : real_quadratic_family(300)) check(f);
}

TEST_CASE("Minkowski constant does not exceed Delta_F") {
    for (const auto& f : imaginary_quadratic_family(1000)) CHECK(f.minkowski_constant() <= f.delta());
    for (const auto& f : real_quadratic_family(1000)) CHECK(f.minkowski_constant() <= f.delta());
}

TEST_CASE("class number bound") {
    const auto r = verify_class_number_bound(quadratic_field(-5));
    CHECK(r.holds);
    CHECK(r.lhs == 2);
    CHECK(close_to(r.rhs, 2 / pi() * sqrt(Real(20)) * (1 + log(Real(20))), 1e-30));
    CHECK(close_to(r.rhs, Real("11.37"), 1e-3));
    const auto gi = verify_class_number_bound(quadratic_field(-1));
    CHECK(gi.holds);
    CHECK(close_to(gi.rhs, Real("3.04"), 2e-3));

    auto fake = quadratic_field(-3);
    fake.class_number = 100;
    CHECK_FALSE(verify_class_number_bound(fake).holds);
    CHECK_THROWS(verify_class_number_bound(rational_field()));
}

TEST_CASE("field records: ingest, reject, round trip") {
    std::istringstream in(
        R"({"degree": 2, "r1": 0, "r2": 1, "disc": -4, "h": 1, "regulator": "1.0", "w": 4})"
        "\n"
        R"({"degree": 2, "r1": 1, "r2": 1, "disc": 5, "h": 1, "regulator": "1", "w": 2})"
        "\n"
        "not json\n"
        R"({"degree": 3, "r1": 1, "r2": 1, "disc": -23, "h": 1, "regulator": "0.28119957432296184651205076406787829979202322574406646267573", "w": 2})"
        "\n");
    const auto res = ingest_field_lines(in);
    REQUIRE(res.fields.size() == 2);
    REQUIRE(res.errors.size() == 2);
    CHECK(res.errors[0].rfind("line 2", 0) == 0);
    CHECK(res.errors[1].rfind("line 3", 0) == 0);

    const auto& gi = res.fields[0];
    const auto ref = quadratic_field(-1);
    CHECK(gi.provenance == Provenance::ingested);
    CHECK(gi.signature == ref.signature);
    CHECK(gi.disc == ref.disc);
    CHECK(gi.class_number == ref.class_number);
    CHECK(gi.roots_of_unity == ref.roots_of_unity);
    CHECK(gi.regulator == ref.regulator);

    const auto& cubic = res.fields[1];
    CHECK(cubic.degree() == 3);
    CHECK(residue(cubic) > 0);
    CHECK_THROWS_AS(laurent_data(cubic), std::domain_error);

    for (const auto& f : {quadratic_field(-5), quadratic_field(13), cubic}) {
        const auto back = parse_field_record(emit_field_record(f));
        CHECK(back.signature == f.signature);
        CHECK(back.disc == f.disc);
        CHECK(back.class_number == f.class_number);
        CHECK(back.roots_of_unity == f.roots_of_unity);
        CHECK(abs(back.regulator - f.regulator) <= abs(f.regulator) * ulp_scale(128));
    }
}

TEST_CASE("ingested Laurent data is used as given") {
    const auto f = parse_field_record(
        R"({"degree": 3, "r1": 1, "r2": 1, "disc": -23, "h": 1, "regulator": "0.2811995743229618465", "w": 2,)"
        R"( "laurent": {"lm1": "0.36840932071582682", "l0": "0.25", "l1": "0.125"}})");
    const auto l = laurent_data(f);
    CHECK(l.lambda_m1 == Real("0.36840932071582682"));
    CHECK(l.lambda_0 == Real("0.25"));
    CHECK(l.lambda_1 == Real("0.125"));
}

TEST_CASE("ingested Laurent data must match the residue") {
    CHECK_THROWS_AS(parse_field_record(R"({"degree": 3, "r1": 1, "r2": 1, "disc": -23, "h": 1, "regulator": "0.28119957432",)"
                                       R"( "w": 2, "laurent": {"lm1": "0.5", "l0": "0.25", "l1": "0.125"}})"),
                    std::invalid_argument);
}

TEST_CASE("field cache stores and finds records") {
    const auto path = (std::filesystem::temp_directory_path() / "tracecoeff_unit_cache.jsonl").string();
    std::remove(path.c_str());
    {
        FieldCache cache(path);
        CHECK_FALSE(cache.find("Q(sqrt(-5))").has_value());
        cache.store(quadratic_field(-5));
    }
    FieldCache again(path);
    const auto hit = again.find("Q(sqrt(-5))");
    REQUIRE(hit.has_value());
    CHECK(hit->class_number == 2);
    std::remove(path.c_str());
}

TEST_CASE("field specs") {
    CHECK(field_from_spec("Q").is_rational());
    CHECK(field_from_spec("Q(i)").disc == -4);
    CHECK(field_from_spec("-3").disc == -3);
    CHECK(field_from_spec("Q(sqrt(5))").disc == 5);
    CHECK_THROWS(field_from_spec("banana"));
}

TEST_CASE("Brauer-Siegel sweep") {
    const auto single = brauer_siegel_sweep({quadratic_field(-7)}, -1, 0.5, 96);
    REQUIRE(single.rows.size() == 1);
    CHECK(close_to(single.fitted_c, residue(quadratic_field(-7)) / sqrt(Real(7)), 1e-20));
    const auto fam = brauer_siegel_sweep(imaginary_quadratic_family(500), -1, 0.5, 64);
    CHECK(fam.rows.size() == imaginary_quadratic_family(500).size());
    for (const auto& r : fam.rows) CHECK(r.ratio_eps <= fam.fitted_c);
    const auto real1 = brauer_siegel_sweep(real_quadratic_family(100), 1, 0.5, 64);
    CHECK(real1.rows.size() == real_quadratic_family(100).size());
    CHECK_THROWS(brauer_siegel_sweep({quadratic_field(-7), rational_field()}, -1, 0.5, 64));
}
