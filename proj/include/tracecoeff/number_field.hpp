#pragma once

#include "tracecoeff/real.hpp"

#include <cstdint>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

namespace tracecoeff {

struct Signature {
    int r1 = 1;
    int r2 = 0;
    int degree() const { return r1 + 2 * r2; }
    bool operator==(const Signature&) const = default;
};

enum class Provenance { computed_quadratic, ingested };

struct LaurentData {
    Real lambda_m1;
    Real lambda_0;
    Real lambda_1;
    int precision_bits = kDefaultPrecisionBits;
    Real error_m1;
    Real error_0;
    Real error_1;
};

struct NumberField {
    Signature signature;
    std::int64_t disc = 1;  // signed discriminant
    std::int64_t class_number = 1;
    Real regulator = 1;
    int roots_of_unity = 2;
    Provenance provenance = Provenance::computed_quadratic;
    std::string label;
    // Squarefree m for Q(sqrt m); 1 for Q itself, 0 for ingested fields of degree > 2.
    std::int64_t radicand = 1;
    std::optional<LaurentData> laurent;  // ingested Laurent data, if any

    int degree() const { return signature.degree(); }
    std::int64_t abs_disc() const { return disc < 0 ? -disc : disc; }
    /// Delta_F = sqrt(D_F).
    Real delta() const;
    Real minkowski_constant() const;
    bool is_rational() const { return degree() == 1; }
    bool is_quadratic() const { return degree() == 2 && radicand != 0 && radicand != 1; }
    bool is_imaginary_quadratic() const { return is_quadratic() && disc < 0; }
};

/// Positive-definite or indefinite binary quadratic form a x^2 + b xy + c y^2.
struct QuadraticForm {
    std::int64_t a, b, c;
    std::int64_t discriminant() const { return b * b - 4 * a * c; }
    bool operator==(const QuadraticForm&) const = default;
};

/// Fundamental unit (t + u sqrt D)/2 of a real quadratic field, t, u > 0.
struct FundamentalUnit {
    BigInt t;
    BigInt u;
    int norm;  // +1 or -1
    bool used_big_integers;
};

NumberField rational_field();
NumberField quadratic_field(std::int64_t m);

/// Reduced primitive positive-definite forms of discriminant d < 0.
std::vector<QuadraticForm> reduced_forms(std::int64_t d);
/// Reduce a positive-definite form to the unique reduced form in its class.
QuadraticForm reduce_form(QuadraticForm f);
std::int64_t imaginary_class_number(std::int64_t d);

FundamentalUnit fundamental_unit(std::int64_t d);
/// Class number of the real quadratic field of discriminant d > 0 given its regulator.
std::int64_t real_class_number(std::int64_t d, const Real& regulator);

/// Lenient reader: every line is parsed independently.
struct IngestResult {
    std::vector<NumberField> fields;
    std::vector<std::string> errors;  // "line N: reason"
};
IngestResult ingest_fields(const std::string& path);
IngestResult ingest_field_lines(std::istream& in);
/// Parse one record; throws std::invalid_argument on malformed or inconsistent data.
NumberField parse_field_record(const std::string& line);
std::string emit_field_record(const NumberField& f);

/// Residue of zeta_F at s = 1 from the class number formula.
Real residue(const NumberField& f);
LaurentData laurent_data(const NumberField& f, int precision_bits = kDefaultPrecisionBits);

/// zeta_F(s) and its derivatives up to max_order at real s >= 2.
std::vector<Approx> dedekind_zeta(const NumberField& f, const Real& s, int max_order,
                                  int precision_bits = kDefaultPrecisionBits);

struct FinitePlace {
    std::int64_t q;
    std::int64_t different_norm;
    std::int64_t over_prime;
    int index = 0;  // distinguishes the places above a split prime
    bool operator==(const FinitePlace&) const = default;
};

struct PlaceSet {
    NumberField field;
    std::vector<FinitePlace> finite_places;
};

bool is_prime(std::int64_t n);
std::vector<FinitePlace> places_above(const NumberField& f, std::int64_t p);
/// S consisting of the archimedean places and every place above the listed primes.
PlaceSet place_set(const NumberField& f, const std::vector<std::int64_t>& primes);
/// Validates pairwise distinctness; throws on duplicates.
PlaceSet place_set(const NumberField& f, std::vector<FinitePlace> places);

struct ClassNumberBoundReport {
    bool holds;
    Real lhs;
    Real rhs;
};
ClassNumberBoundReport verify_class_number_bound(const NumberField& f);

struct BrauerSiegelRow {
    std::string label;
    std::int64_t disc;
    Real lambda;
    Real ratio_eps;  // |lambda_k| / D^eps
    Real ratio_log;  // |lambda_{-1}| / (log D)^{d-1}; only for k = -1
};

struct BrauerSiegelReport {
    int k;
    double eps;
    Real fitted_c;      // max |lambda_k| / D^eps
    Real fitted_c_log;  // max |lambda_{-1}| / (log D)^{d-1}, k = -1 only
    std::vector<BrauerSiegelRow> rows;
};
BrauerSiegelReport brauer_siegel_sweep(const std::vector<NumberField>& family, int k, double eps,
                                       int precision_bits = 64);

/// Append-only JSONL store of field records, shared by concurrent readers.
class FieldCache {
public:
    explicit FieldCache(std::string path);
    std::optional<NumberField> find(const std::string& label) const;
    void store(const NumberField& f);
    std::size_t size() const;

private:
    std::string path_;
    mutable std::shared_mutex mutex_;
    std::vector<NumberField> entries_;
};

/// Parses "Q", "Q(i)", "Q(sqrt(m))" or a bare integer m.
NumberField field_from_spec(const std::string& spec);
std::string quadratic_label(std::int64_t m);

}  // namespace tracecoeff
