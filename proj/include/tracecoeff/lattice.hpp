#pragma once

#include "tracecoeff/number_field.hpp"
#include "tracecoeff/real.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace tracecoeff {

using RationalMatrix = std::vector<std::vector<Rational>>;
using RealMatrix = std::vector<std::vector<Real>>;
using Coefficients = std::vector<std::int64_t>;

/// R^{r1} + C^{r2} laid out as d real coordinates: r1 real ones, then (re, im) per
/// complex place. Complex coordinates enter the inner product with weight 2.
struct MinkowskiSpace {
    Signature signature;
    int dim() const { return signature.degree(); }
    Real weight(int coordinate) const { return coordinate < signature.r1 ? Real(1) : Real(2); }
};

/// Volume of the unit ball of the weighted norm, in Lebesgue measure of the coordinates.
Real unit_ball_volume(const Signature& sig);
/// Volume of the Euclidean unit ball in R^d.
Real euclidean_ball_volume(int d);
/// Monte-Carlo estimate of unit_ball_volume(sig) with a fixed seed.
Real monte_carlo_ball_volume(const Signature& sig, std::int64_t samples, std::uint64_t seed);

class Lattice {
public:
    static Lattice from_rational_basis(const Signature& sig, const RationalMatrix& rows);
    static Lattice from_real_basis(const Signature& sig, const RealMatrix& rows);
    /// Real coordinates plus a known exact Gram matrix (checked against the coordinates).
    static Lattice from_basis_and_gram(const Signature& sig, const RealMatrix& rows, const RationalMatrix& gram);
    /// Abstract lattice given only by its Gram matrix (coordinates from Cholesky).
    static Lattice from_gram(const RationalMatrix& gram);

    const MinkowskiSpace& space() const { return space_; }
    int dim() const { return space_.dim(); }
    const RealMatrix& basis() const { return basis_; }
    const std::optional<RationalMatrix>& exact_basis() const { return exact_basis_; }
    const RealMatrix& gram() const { return gram_; }
    const std::optional<RationalMatrix>& exact_gram() const { return exact_gram_; }
    bool is_exact() const { return exact_gram_.has_value(); }
    /// det = sqrt(det gram).
    Real det() const;
    std::optional<Rational> det_squared() const;

    Real norm2(const Coefficients& x) const;
    std::optional<Rational> exact_norm2(const Coefficients& x) const;
    std::vector<Real> vector_of(const Coefficients& x) const;

    std::string to_json() const;

private:
    MinkowskiSpace space_;
    RealMatrix basis_;
    std::optional<RationalMatrix> exact_basis_;
    RealMatrix gram_;
    std::optional<RationalMatrix> exact_gram_;
    // Integer Gram numerators over a common denominator, for fast exact norms.
    std::vector<std::vector<BigInt>> gram_numerators_;
    BigInt gram_denominator_;
    bool small_numerators_ = false;

    void finish_construction();
    friend Lattice dual(const Lattice& l);
    friend struct LatticeAccess;
};

Lattice dual(const Lattice& l);
/// Orthogonal sum of k copies.
Lattice power(const Lattice& l, int k);

struct LatticePoint {
    Coefficients coeffs;
    Real norm2;
};

/// All nonzero points with norm^2 <= radius2 (closed ball), via Fincke-Pohst on the
/// given basis. Throws once more than max_points are visited.
std::vector<LatticePoint> enumerate_points(const Lattice& l, const Real& radius2,
                                           std::int64_t max_points = 10'000'000);
/// Exact norm^2 <= radius2 test, falling back to Real when the Gram is not exact.
bool within(const Lattice& l, const Coefficients& x, const Rational& radius2);

/// Unimodular transform U (rows) such that the rows of U*B form an LLL-reduced basis.
std::vector<Coefficients> lll_transform(const RealMatrix& gram);

struct SuccessiveMinima {
    std::vector<Real> values;   // lambda_i
    std::vector<Real> squares;  // lambda_i^2
    std::optional<std::vector<Rational>> exact_squares;
    std::vector<Coefficients> witnesses;  // coefficients in the lattice basis
};
SuccessiveMinima successive_minima(const Lattice& l, std::int64_t max_points = 10'000'000);

struct MinkowskiSecondReport {
    bool holds;
    Real product;  // lambda_1 ... lambda_d
    Real lower;
    Real upper;
    // Bounds with the coordinate-Lebesgue ball volume next to the metric determinant.
    Real literal_lower;
    Real literal_upper;
    bool literal_holds;
};
MinkowskiSecondReport verify_minkowski_second(const Lattice& l);
MinkowskiSecondReport verify_minkowski_second(const Lattice& l, const SuccessiveMinima& m);

struct DualityPairingReport {
    bool holds;
    std::vector<Real> products;  // lambda_i(L) lambda_{d-i+1}(L*)
};
DualityPairingReport verify_duality_pairing(const Lattice& l);
DualityPairingReport verify_duality_pairing(const SuccessiveMinima& m, const SuccessiveMinima& dual_m);

struct IndexBoundReport {
    bool holds;
    BigInt index;  // [L : span of minima witnesses]
    Real bound;    // 2^d / v_r
};
IndexBoundReport verify_index_bound(const Lattice& l, const SuccessiveMinima& m);

struct PointCountReport {
    std::int64_t count;  // points of (L*)^K with norm <= r, origin included
    Real lambda_d;       // lambda_d(L)
    Real lambda_1_dual;  // lambda_1(L*), the sharp threshold for count = 1
    bool below_threshold;  // r < 1/lambda_d
    Real bound;            // 1 or (3 r lambda_d)^{dK}
    bool holds;
};
/// Counts by convolving the shell list of L*; falls back to direct enumeration.
PointCountReport count_points(const Lattice& l, int k, const Real& r);
/// Direct enumeration of the dK-dimensional lattice (L*)^K.
std::int64_t count_points_direct(const Lattice& l, int k, const Real& r);

struct DualSumReport {
    Real partial;     // sum over 0 < ||X|| <= radius
    Real tail_bound;  // rigorous bound on the rest from the point-count estimate
    Real rhs;         // 6^{dK} zeta(t) lambda_d^{dK+t}
    bool conclusive;  // partial + tail_bound <= rhs
};
DualSumReport dual_sum(const Lattice& l, int k, const Real& t, const Real& radius);

/// Element x + y*omega of a quadratic field, O_F = Z[omega].
struct QuadElement {
    Rational x;
    Rational y;
};

struct QuadraticRing {
    std::int64_t radicand;
    std::int64_t trace;  // Tr(omega)
    std::int64_t norm;   // N(omega)
    explicit QuadraticRing(std::int64_t m);
    QuadElement mul(const QuadElement& a, const QuadElement& b) const;
    QuadElement conj(const QuadElement& a) const;
    Rational tr(const QuadElement& a) const;
    Rational nm(const QuadElement& a) const;
};

/// content * Z-module [a, b + omega] with 0 <= b < a.
struct IdealSpec {
    Rational content = 1;
    std::int64_t a = 1;
    std::int64_t b = 0;
};

struct IdealLattice {
    NumberField field;
    IdealSpec ideal;
    Rational norm;
    Lattice embedded;
    QuadElement element(const Coefficients& x) const;
};

IdealLattice ideal_lattice(const NumberField& f, const IdealSpec& ideal);
IdealLattice inverse_ideal_lattice(const IdealLattice& l);
/// Ideal of the place with the given index above p.
IdealSpec prime_ideal(const NumberField& f, std::int64_t p, int index = 0);
/// Every integral ideal of norm exactly n.
std::vector<IdealSpec> ideals_of_norm(const NumberField& f, std::int64_t n);
/// The reduced form attached to a primitive ideal of an imaginary quadratic field.
QuadraticForm ideal_form(const NumberField& f, const IdealSpec& ideal);
std::vector<IdealLattice> minkowski_representatives(const NumberField& f);

struct AmGmReport {
    bool holds;
    std::int64_t checked;
    Real min_lambda1;
};
/// ||x||^2 >= 2|N(x)| and |N(x)| >= N(ideal) on every nonzero vector up to the given radius.
AmGmReport verify_am_gm(const IdealLattice& l, const Real& radius2);

struct FundamentalDomainReport {
    Real radius;       // 2^{2d} v_r^{-2} Delta_F
    Real volume_m;     // (lambda_{-1})^n
    Real volume_n_bound;  // Delta_F^{n(n-1)d/2}
    Real box_constant;    // archimedean constant in front of the N-volume bound
    Real covering_radius_estimate;
    bool cover_holds;     // O_F translates of the radius ball cover the sample
    std::int64_t samples;
};
FundamentalDomainReport fundamental_domain_radii(const NumberField& f, int n, std::int64_t samples = 2000,
                                                 std::uint64_t seed = 1);

}  // namespace tracecoeff
