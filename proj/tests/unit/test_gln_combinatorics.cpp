#include "doctest.h"
#include "oracle_values.hpp"
#include "tracecoeff/gln_combinatorics.hpp"

#include <functional>
#include <random>

using namespace tracecoeff;

namespace {

std::vector<Composition> compositions(int n) {
    std::vector<Composition> out;
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int left) {
        if (left == 0) {
            out.emplace_back(cur);
            return;
        }
        for (int k = 1; k <= left; ++k) {
            cur.push_back(k);
            rec(left - k);
            cur.pop_back();
        }
    };
    rec(n);
    return out;
}

// Every choice of one partition per block.
std::vector<std::vector<Partition>> block_classes(const std::vector<int>& blocks) {
    std::vector<std::vector<Partition>> out{{}};
    for (int b : blocks) {
        std::vector<std::vector<Partition>> next;
        for (const auto& prefix : out)
            for (const auto& p : partitions(b)) {
                auto v = prefix;
                v.push_back(p);
                next.push_back(std::move(v));
            }
        out = std::move(next);
    }
    return out;
}

// Shortest nonzero vector norm^2 of the plane lattice with basis rows u, v (Lagrange reduction).
Real gauss_min_norm2(std::array<Real, 2> u, std::array<Real, 2> v) {
    auto dot = [](const std::array<Real, 2>& a, const std::array<Real, 2>& b) { return a[0] * b[0] + a[1] * b[1]; };
    if (dot(u, u) > dot(v, v)) std::swap(u, v);
    while (true) {
        const Real mu = round(dot(u, v) / dot(u, u));
        v = {v[0] - mu * u[0], v[1] - mu * u[1]};
        if (dot(v, v) >= dot(u, u)) return dot(u, u);
        std::swap(u, v);
    }
}

Matrix2 real_matrix(const Real& a, const Real& b, const Real& c, const Real& d) {
    Matrix2 g;
    g[0][0] = {a, 0};
    g[0][1] = {b, 0};
    g[1][0] = {c, 0};
    g[1][1] = {d, 0};
    return g;
}

}  // namespace

TEST_CASE("partitions and conjugates") {
    const auto p3 = partitions(3);
    REQUIRE(p3.size() == 3);
    CHECK(p3[0] == Partition({3}));
    CHECK(p3[1] == Partition({2, 1}));
    CHECK(p3[2] == Partition({1, 1, 1}));
    CHECK(partitions(1).size() == 1);
    CHECK(partitions(4).size() == 5);
    CHECK(partitions(6).size() == 11);
    CHECK(partitions(10).size() == 42);
    CHECK(conjugate(Partition({4, 2, 1})) == Partition({3, 2, 1, 1}));
    for (int n = 1; n <= 10; ++n)
        for (const auto& p : partitions(n)) CHECK(conjugate(conjugate(p)) == p);
    CHECK(dominates(Partition({3}), Partition({2, 1})));
    CHECK_FALSE(dominates(Partition({2, 1, 1}), Partition({2, 2})));
    CHECK_THROWS(Partition({1, 2}));
    CHECK_THROWS(Partition({2, 0}));
    CHECK_THROWS(Composition({2, -1}));
}

TEST_CASE("induction examples") {
    CHECK(induce(Composition({1, 1, 1}), {trivial_class(1), trivial_class(1), trivial_class(1)}) == Partition({3}));
    CHECK(induce(Composition({2, 1}), {regular_class(2), trivial_class(1)}) == Partition({3}));
    CHECK(induce(Composition({2, 1}), {trivial_class(2), trivial_class(1)}) == Partition({2, 1}));
    CHECK(induce(Composition({2, 2}), {trivial_class(2), trivial_class(2)}) == Partition({2, 2}));
    CHECK_THROWS(induce(Composition({2, 1}), {trivial_class(1), trivial_class(1)}));
    CHECK_THROWS(induce(Composition({2, 1}), {trivial_class(2)}));
}

TEST_CASE("rank oracle") {
    CHECK(induce_oracle(Composition({1, 1, 1}), {trivial_class(1), trivial_class(1), trivial_class(1)}, 4) ==
          Partition({3}));
    CHECK(induce_oracle(Composition({2, 2}), {trivial_class(2), trivial_class(2)}, 4) == Partition({2, 2}));
    for (const auto& p : partitions(5)) CHECK(induce_oracle(Composition({5}), {p}, 2) == p);
    CHECK_THROWS(induce_oracle(Composition({1, 1}), {trivial_class(1), trivial_class(1)}, 0));
    CHECK(jordan_type({{0, 1, 0}, {0, 0, 1}, {0, 0, 0}}) == Partition({3}));
    CHECK(jordan_type({{0, 0, 1}, {0, 0, 0}, {0, 0, 0}}) == Partition({2, 1}));
    CHECK(jordan_type({{0, 0}, {0, 0}}) == Partition({1, 1}));
}

TEST_CASE("induction agrees with the rank oracle on trivial classes") {
    for (int n = 1; n <= 6; ++n) {
        for (const auto& levi : compositions(n)) {
            std::vector<Partition> triv;
            for (int b : levi.parts) triv.push_back(trivial_class(b));
            CAPTURE(to_string(levi));
            CHECK(induce(levi, triv) == induce_oracle(levi, triv, 8, 99));
        }
    }
}

TEST_CASE("induction agrees with the rank oracle on random classes") {
    std::mt19937_64 rng(2024);
    for (int t = 0; t < 50; ++t) {
        const int n = 2 + static_cast<int>(rng() % 5);
        const auto comps = compositions(n);
        const auto& levi = comps[rng() % comps.size()];
        std::vector<Partition> classes;
        for (int b : levi.parts) {
            const auto ps = partitions(b);
            classes.push_back(ps[rng() % ps.size()]);
        }
        CAPTURE(to_string(levi));
        CHECK(induce(levi, classes) == induce_oracle(levi, classes, 8, rng()));
    }
}

TEST_CASE("induction is transitive through intermediate Levis") {
    for (int n = 1; n <= 8; ++n) {
        for (const auto& outer : compositions(n)) {
            // Refinements: a composition of each outer block.
            std::vector<std::vector<Composition>> per_block;
            for (int b : outer.parts) per_block.push_back(compositions(b));
            std::vector<std::size_t> idx(per_block.size(), 0);
            while (true) {
                std::vector<int> inner_parts;
                for (std::size_t i = 0; i < idx.size(); ++i)
                    for (int p : per_block[i][idx[i]].parts) inner_parts.push_back(p);
                for (const auto& classes : block_classes(inner_parts)) {
                    std::vector<Partition> middle;
                    std::size_t pos = 0;
                    for (std::size_t i = 0; i < idx.size(); ++i) {
                        const auto& sub = per_block[i][idx[i]];
                        std::vector<Partition> part(classes.begin() + static_cast<std::ptrdiff_t>(pos),
                                                    classes.begin() + static_cast<std::ptrdiff_t>(pos + sub.parts.size()));
                        pos += sub.parts.size();
                        middle.push_back(induce(sub, part));
                    }
                    REQUIRE(induce(outer, middle) == induce(Composition(inner_parts), classes));
                }
                std::size_t k = 0;
                while (k < idx.size() && ++idx[k] == per_block[k].size()) idx[k++] = 0;
                if (k == idx.size()) break;
            }
        }
    }
}

TEST_CASE("Richardson Levi round trip") {
    CHECK(richardson_levi(Partition({3})) == Partition({1, 1, 1}));
    CHECK(richardson_levi(Partition({2, 1})) == Partition({2, 1}));
    CHECK(richardson_levi(Partition({1, 1, 1})) == Partition({3}));
    for (int n = 1; n <= 10; ++n) {
        for (const auto& v : partitions(n)) {
            const auto m = richardson_levi(v);
            std::vector<Partition> triv;
            for (int b : m.parts) triv.push_back(trivial_class(b));
            CHECK(induce(Composition(m.parts), triv) == v);
        }
    }
}

TEST_CASE("class dimensions") {
    CHECK(dimensions(Partition({1, 1, 1})).dim_class == 0);
    auto d = dimensions(Partition({3}));
    CHECK(d.dim_radical == 3);
    CHECK(d.dim_class == 6);
    CHECK(d.dim_a_L_G == 2);
    CHECK(d.weyl_levi == 1);
    CHECK(d.weyl_group == 6);
    d = dimensions(Partition({2, 1}));
    CHECK(d.dim_radical == 2);
    CHECK(d.dim_class == 4);
    CHECK(d.dim_a_L_G == 1);
    CHECK(d.weyl_levi == 2);
    for (int n = 1; n <= 10; ++n) {
        for (const auto& v : partitions(n)) CHECK(dimensions(v).dim_class % 2 == 0);
        CHECK(dimensions(regular_class(n)).dim_class == n * n - n);
        CHECK(dimensions(trivial_class(n)).dim_class == 0);
        CHECK(unipotent_classes(n).size() == partitions(n).size());
    }
}

TEST_CASE("three-by-three induction table") {
    const auto rows = induction_table(3);
    REQUIRE(rows.size() == 6);
    std::vector<std::array<std::string, 4>> got;
    for (const auto& r : rows)
        got.push_back({levi_name(r.levi), class_name(r.levi, r.levi_class), class_name(Partition({3}), {r.induced}),
                       levi_name(r.richardson)});
    const std::vector<std::array<std::string, 4>> expected{
        {"T0", "1^T0", "V_reg", "T0"},
        {"GL2xGL1", "1^GL2xGL1", "V_s-r", "GL2xGL1"},
        {"GL2xGL1", "V_reg^GL2xGL1", "V_reg", "T0"},
        {"GL3", "1^GL3", "1^GL3", "GL3"},
        {"GL3", "V_s-r", "V_s-r", "GL2xGL1"},
        {"GL3", "V_reg", "V_reg", "T0"},
    };
    CHECK(got == expected);
    CHECK(induction_table(4).size() == 14);
}

TEST_CASE("root datum") {
    const auto rd = root_datum(3);
    REQUIRE(rd.simple_roots.size() == 2);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            CHECK(rd.pairing(rd.simple_roots[i], rd.fundamental_coweights[j]) == (i == j ? 1 : 0));
            CHECK(rd.pairing(rd.fundamental_weights[i], rd.simple_coroots[j]) == (i == j ? 1 : 0));
        }
    for (const auto& a : rd.simple_roots) {
        CHECK(rd.pairing(a, rd.rho_check) == 1);
    }
    for (const auto& c : rd.simple_coroots) CHECK(rd.pairing(rd.rho, c) == 1);
}

TEST_CASE("reduction constants") {
    auto r = reduction_constants(rational_field(), 2);
    CHECK(close_to(r.c_f, pi() / 4, 1e-35));
    REQUIRE(r.gaps.size() == 1);
    CHECK(r.gaps[0].alpha_rho_check == 1);
    CHECK(close_to(r.gaps[0].exp_minus_alpha_t1, 4 / pi(), 1e-35));
    const auto gi = reduction_constants(quadratic_field(-1), 2);
    CHECK(close_to(gi.c_f, pi() * pi() / 64, 1e-35));
    CHECK(close_to(gi.gaps[0].exp_minus_alpha_t1, 64 / (pi() * pi()), 1e-35));
    // (64/pi^2) / |D| with |D| = 4 meets the bound (4/pi)^2 with equality
    CHECK(close_to(gi.gaps[0].normalized, gi.gaps[0].normalized_bound, 1e-35));
    for (const auto& f : {rational_field(), quadratic_field(-1), quadratic_field(5), quadratic_field(-163)}) {
        for (int n = 2; n <= 5; ++n) {
            const auto rc = reduction_constants(f, n);
            CHECK(rc.all_at_least_one);
            CHECK(rc.gaps.size() == static_cast<std::size_t>(n * (n - 1) / 2));
            for (const auto& g : rc.gaps) {
                CHECK(g.exp_minus_alpha_t1 >= 1);
                CHECK(g.normalized <= g.normalized_bound * (1 + Real("1e-30")));
            }
            for (int i = 0; i + 1 < n; ++i) CHECK(rc.t1[i] - rc.t1[i + 1] <= 0);
        }
    }
}

TEST_CASE("Siegel certificate for the identity") {
    const auto c = gl2_siegel_certify(rational_field(), real_matrix(1, 0, 0, 1));
    CHECK(c.certified);
    CHECK(c.gap == 1);
    CHECK(c.gamma[0][0].x * c.gamma[1][1].x - c.gamma[0][1].x * c.gamma[1][0].x == 1);
}

TEST_CASE("Siegel certificates over Q match Gauss reduction") {
    std::vector<Matrix2> gs;
    for (const char* t : {"0.05", "0.2", "0.9", "3.5"}) {
        const Real tt(t);
        gs.push_back(real_matrix(tt, tt * Real("0.37"), 0, 1 / tt));
    }
    for (std::uint64_t seed = 1; seed <= 40; ++seed) gs.push_back(random_gl2(rational_field(), seed));
    for (const auto& g : gs) {
        const auto c = gl2_siegel_certify(rational_field(), g);
        const Real expect = gauss_min_norm2({g[0][0].re, g[0][1].re}, {g[1][0].re, g[1][1].re});
        CHECK(close_to(c.min_norm2, expect, 1e-25));
        CHECK(c.gap >= sqrt(Real(3)) / 2 * (1 - Real("1e-25")));
        CHECK(c.certified);
        const Rational det = c.gamma[0][0].x * c.gamma[1][1].x - c.gamma[0][1].x * c.gamma[1][0].x;
        CHECK(abs(det) == 1);
        CHECK(c.gamma[1][0].x == c.z0[0].x);
        CHECK(c.gamma[1][1].x == c.z0[1].x);
    }
}

TEST_CASE("Siegel certificates over imaginary quadratic fields") {
    for (std::int64_t m : {-1, -2, -3, -7, -11}) {
        const auto f = quadratic_field(m);
        REQUIRE(siegel_supported(f));
        for (std::uint64_t seed = 1; seed <= 30; ++seed) {
            const auto c = gl2_siegel_certify(f, random_gl2(f, seed));
            CAPTURE(m);
            CHECK(c.certified);
            CHECK(c.gap >= c.c_f);
        }
    }
    CHECK_FALSE(siegel_supported(quadratic_field(-5)));
    CHECK_FALSE(siegel_supported(quadratic_field(5)));
    CHECK_THROWS(gl2_siegel_certify(quadratic_field(-5), random_gl2(quadratic_field(-5), 1)));
}
