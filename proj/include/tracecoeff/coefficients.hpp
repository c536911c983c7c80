#pragma once

#include "tracecoeff/gln_combinatorics.hpp"
#include "tracecoeff/lattice.hpp"
#include "tracecoeff/local_zeta.hpp"
#include "tracecoeff/number_field.hpp"
#include "tracecoeff/real.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace tracecoeff {

/// Laurent data at s = 1 of zeta_F with the Euler factors at S_fin removed.
struct PartialLaurentData {
    LaurentData base;
    PlaceSet places;
    Real lambda_m1_s;
    Real lambda_0_s;
    Real lambda_1_s;
    Real error_m1_s;
    Real error_0_s;
    Real error_1_s;
};
PartialLaurentData partial_laurent(const PlaceSet& s, int precision_bits = kDefaultPrecisionBits);
/// Same, reusing Laurent data already computed for s.field.
PartialLaurentData partial_laurent(const LaurentData& base, const PlaceSet& s);

/// Sum over v in S_fin of |zeta_v'(1)/zeta_v(1)| = log q / (q - 1).
Real local_log_derivative_sum(const PlaceSet& s);

/// lambda_{-1} zeta_F(2) ... zeta_F(n).
Real volume_gl(const NumberField& f, int n, int precision_bits = kDefaultPrecisionBits);

struct NamedFactor {
    std::string name;
    Real value;
};

struct CoefficientValue {
    int n = 0;                 // rank of the ambient GL_n (product of blocks for a Levi)
    std::string class_label;   // "V_reg", "1^GL2xGL1", "elliptic", ...
    std::string field_label;
    std::vector<FinitePlace> places;
    Real value;
    Real error;
    std::vector<NamedFactor> breakdown;  // value = product of factor values
    int eta = 0;                         // default truncation order for the zeta factor
};

/// The coefficient of the trivial class of GL_1: lambda_{-1}.
CoefficientValue coeff_gl1(const PlaceSet& s, int precision_bits = kDefaultPrecisionBits);
CoefficientValue coeff_gl2_trivial(const PlaceSet& s, int precision_bits = kDefaultPrecisionBits);
CoefficientValue coeff_gl2_regular(const PlaceSet& s, int precision_bits = kDefaultPrecisionBits);
/// lambda_{-1} lambda_0 + lambda_{-1}^2 sum |zeta_v'(1)/zeta_v(1)|, the additive form of the same value.
Real coeff_gl2_regular_additive(const PlaceSet& s, int precision_bits = kDefaultPrecisionBits);

struct Gl2Routes {
    Real product;   // (lambda_{-1})^2 lambda_0^S / lambda_{-1}^S
    Real additive;  // lambda_{-1} lambda_0 + (lambda_{-1})^2 sum_v |zeta_v'(1)/zeta_v(1)|
    Real identity_lhs;  // lambda_0^S/lambda_{-1}^S - lambda_0/lambda_{-1}
    Real identity_rhs;  // sum_v |zeta_v'(1)/zeta_v(1)|
};
Gl2Routes gl2_regular_routes(const PartialLaurentData& p);

enum class Gl3Class { regular, subregular, trivial };
CoefficientValue coeff_gl3(const PlaceSet& s, Gl3Class which, int precision_bits = kDefaultPrecisionBits);

/// Coefficient of the class with the given Jordan type in GL_n, n <= 3.
CoefficientValue coeff_unipotent(const PlaceSet& s, const Partition& jordan,
                                 int precision_bits = kDefaultPrecisionBits);

/// Product over the blocks of a Levi; each block coefficient must be of GL_{n_i}, n_i <= 3.
CoefficientValue coeff_factorize(const Composition& levi, const std::vector<CoefficientValue>& per_block);

using IntMatrix2 = std::array<std::array<Rational, 2>, 2>;

struct EllipticDatum {
    std::array<BigInt, 3> char_poly;  // x^2 + c1 x + c0 as {1, c1, c0}
    std::int64_t extension_disc;      // D_E
    int k;                            // GL rank over E
    BigInt discr_norm;                // |disc(char_poly)|
};

enum class GeneralKind { elliptic, split, central, central_unipotent };

struct GeneralCoefficient {
    CoefficientValue coefficient;
    GeneralKind kind;
    Rational scale;           // gamma was multiplied by this before evaluation
    IntMatrix2 normalized;    // primitive integral representative of the scaling class
    std::optional<EllipticDatum> elliptic;
    std::optional<NumberField> splitting_field;
    bool discriminant_check;  // D_E^k <= discr_norm, true when not elliptic
};

/// a^{GL_2}(gamma, S) over Q; gamma is normalized to a primitive integral matrix first.
GeneralCoefficient coeff_general_gl2(const IntMatrix2& gamma, const PlaceSet& s,
                                     int precision_bits = kDefaultPrecisionBits);

/// C D_F^kappa zeta_factor(S, eta).
Real bound_rhs(const PlaceSet& s, int eta, const Real& kappa, const Real& c);

struct ConjectureRatioReport {
    std::string field_label;
    std::int64_t disc;
    std::string class_label;
    Partition jordan;
    Partition richardson;
    Real value;        // a^G(V, S)
    Real denominator;  // a^M(1^M, S) = product of volumes of the Richardson Levi blocks
    Real ratio;
    int eta;
    Real zeta_factor;
    Real constant;  // |ratio| / zeta_factor
};
ConjectureRatioReport conjecture_ratio_report(const PlaceSet& s, int n, const Partition& jordan,
                                              int precision_bits = kDefaultPrecisionBits);

struct ConjectureSweep {
    std::vector<ConjectureRatioReport> rows;  // sorted by |disc|
    Real fitted_kappa;  // least-squares slope of log constant against log D_F
    Real fitted_c;      // max constant / D_F^fitted_kappa
};
/// Reports for each field with S_fin = places above the given primes. Runs on a bounded worker pool.
ConjectureSweep conjecture_sweep(const std::vector<NumberField>& family, const std::vector<std::int64_t>& primes,
                                 int n, const Partition& jordan, int precision_bits = 64, int workers = 0);

/// Sorts rows by |disc| and fits kappa and C.
ConjectureSweep summarize_sweep(std::vector<ConjectureRatioReport> rows);

/// Volume data of the reduction-theory fundamental domain, delegating to the lattice module.
FundamentalDomainReport fundamental_domain_bounds(const NumberField& f, int n, std::int64_t samples = 2000,
                                                  std::uint64_t seed = 1);

}  // namespace tracecoeff
