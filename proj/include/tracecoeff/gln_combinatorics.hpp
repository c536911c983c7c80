#pragma once

#include "tracecoeff/lattice.hpp"
#include "tracecoeff/number_field.hpp"
#include "tracecoeff/real.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace tracecoeff {

/// Ordered block sizes of a standard Levi subgroup.
struct Composition {
    std::vector<int> parts;
    Composition() = default;
    explicit Composition(std::vector<int> p);
    int size() const;
    bool operator==(const Composition&) const = default;
};

/// Weakly decreasing positive parts; the Jordan type of a unipotent class.
struct Partition {
    std::vector<int> parts;
    Partition() = default;
    explicit Partition(std::vector<int> p);
    int size() const;
    auto operator<=>(const Partition&) const = default;
};

std::string to_string(const Partition& p);    // "(2,1)"
std::string to_string(const Composition& c);  // "(2,1)"

/// All partitions of n, largest first in lexicographic order.
std::vector<Partition> partitions(int n);
Partition conjugate(const Partition& p);
/// lambda >= mu in dominance order (partial sums).
bool dominates(const Partition& lambda, const Partition& mu);
Partition trivial_class(int n);
Partition regular_class(int n);

Partition induce(const Composition& levi, const std::vector<Partition>& classes_per_block);
/// Jordan type of a generic element of V * U, from exact ranks of random block
/// upper-triangular nilpotent matrices; the dominance-maximal type across trials.
Partition induce_oracle(const Composition& levi, const std::vector<Partition>& classes_per_block, int trials,
                        std::uint64_t seed = 1);
/// Jordan type of an integer nilpotent matrix (ranks of powers over Q).
Partition jordan_type(const std::vector<std::vector<std::int64_t>>& nilpotent);

/// Levi (as a partition of block sizes) from which V is induced from the trivial class.
Partition richardson_levi(const Partition& v);

struct ClassDimensions {
    int dim_class;
    int dim_radical;  // dim U of the Richardson parabolic
    int dim_a_L_G;
    std::int64_t weyl_levi;  // |W^M| for the Richardson Levi M
    std::int64_t weyl_group;  // |W^G| = n!
};
ClassDimensions dimensions(const Partition& v);

struct UnipotentClass {
    Partition jordan;
    Partition richardson;
    ClassDimensions dims;
};
std::vector<UnipotentClass> unipotent_classes(int n);

/// Row of the induction table: Levi, class in the Levi, induced class, its Richardson Levi.
struct InductionRow {
    Partition levi;
    std::vector<Partition> levi_class;
    Partition induced;
    Partition richardson;
};
std::vector<InductionRow> induction_table(int n);
std::string levi_name(const Partition& levi);
std::string class_name(const Partition& levi, const std::vector<Partition>& blocks);

struct RootDatum {
    int n;
    std::vector<std::vector<Rational>> simple_roots;  // alpha_i as functionals on a_0
    std::vector<std::vector<Rational>> simple_coroots;
    std::vector<std::vector<Rational>> fundamental_weights;
    std::vector<std::vector<Rational>> fundamental_coweights;
    std::vector<Rational> rho;
    std::vector<Rational> rho_check;
    Rational pairing(const std::vector<Rational>& x, const std::vector<Rational>& y) const;
};
RootDatum root_datum(int n);

struct RootGap {
    int i;  // root e_i - e_j, 1-based
    int j;
    int alpha_rho_check;  // alpha(rho^vee) = j - i
    Real exp_minus_alpha_t1;  // e^{-alpha(T1)} = c_F^{-(j-i)}
    Real normalized;          // e^{-alpha(T1)} / D_F^{alpha(rho^vee)}
    Real normalized_bound;    // (4/pi)^{d alpha(rho^vee)}
};

struct ReductionConstants {
    std::string field_label;
    Real c_f;
    std::vector<Real> t1;  // log(c_F) rho^vee
    std::vector<RootGap> gaps;
    bool all_at_least_one;
};
ReductionConstants reduction_constants(const NumberField& f, int n);

struct ComplexReal {
    Real re;
    Real im;
};
using Matrix2 = std::array<std::array<ComplexReal, 2>, 2>;

struct SiegelCertificate {
    std::array<std::array<QuadElement, 2>, 2> gamma;  // in GL_2(O_F)
    std::array<QuadElement, 2> z0;                    // bottom row of gamma
    Real min_norm2;                                   // ||z0 g||^2
    Real gap;                                         // e^{alpha(H_0(gamma g))}
    Real c_f;
    bool certified;
};

/// Fields with a Euclidean algorithm on O_F: Q and Q(sqrt m), m in {-1,-2,-3,-7,-11}.
bool siegel_supported(const NumberField& f);
SiegelCertificate gl2_siegel_certify(const NumberField& f, const Matrix2& g);
/// Random g with |det g| = 1 (real entries over Q, complex over imaginary fields).
Matrix2 random_gl2(const NumberField& f, std::uint64_t seed);

}  // namespace tracecoeff
