#pragma once

#include "tracecoeff/lattice.hpp"
#include "tracecoeff/number_field.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace tracecoeff {

struct SuiteResult {
    std::string suite;
    std::int64_t checked = 0;
    std::int64_t failed = 0;
    std::vector<std::string> failures;  // first few failure descriptions
    bool passed() const { return failed == 0 && checked > 0; }
    void record(bool ok, const std::string& what);
};

/// Imaginary quadratic fields with |D| <= d_max, ordered by |D|.
std::vector<NumberField> imaginary_quadratic_family(std::int64_t d_max);
/// Real quadratic fields with D <= d_max, ordered by D.
std::vector<NumberField> real_quadratic_family(std::int64_t d_max);

/// Lattices used by the lattice suites: Z^d (d <= 4), seeded random integral lattices, and the
/// ideal lattices of Q(i), Q(sqrt -3), Q(sqrt -5) with norm <= max_norm.
struct NamedLattice {
    std::string name;
    Lattice lattice;
};
std::vector<NamedLattice> lattice_test_family(std::uint64_t seed, int random_count = 25, std::int64_t max_norm = 10);

/// Ratio lemma with the explicit constant for prime powers q <= q_max and m1 + m2 <= m_max.
SuiteResult verify_zeta_ratio(std::int64_t q_max, int m_max);
/// Minkowski's second theorem, the duality pairing and the sublattice index bound.
SuiteResult verify_minkowski(std::uint64_t seed, int random_count = 25);
/// Point counts in (L*)^K: shell convolution against direct enumeration, and the count bound.
SuiteResult verify_lattice_count(std::uint64_t seed, int random_count = 25);
SuiteResult verify_class_bound(std::int64_t d_max);
/// induce against the rank oracle on every composition with trivial classes for n <= n_max, on
/// seeded random non-trivial inputs, and the Richardson round trip for n <= round_trip_max.
SuiteResult verify_induction_oracle(int n_max, int random_inputs = 50, std::uint64_t seed = 1, int trials = 8,
                                    int round_trip_max = 10);
/// Random g over Q and Q(i); every certificate must reach c_F.
SuiteResult verify_siegel(int trials, std::uint64_t seed = 1);
/// Partial Laurent identity and the two GL(2) routes over Q, Q(i), Q(sqrt -3), Q(sqrt 5) for all
/// S_fin from primes <= p_max with at most max_places primes.
SuiteResult verify_gl2_routes(std::int64_t p_max = 30, int max_places = 3, double tolerance = 1e-10);
/// Truncated product against tuple enumeration for multisets of q values.
SuiteResult verify_zeta_factor(const std::vector<std::int64_t>& q_values, int max_places, int max_eta);

std::vector<std::string> suite_names();
/// Runs a suite with its default parameters; throws std::invalid_argument on unknown names.
SuiteResult run_suite(const std::string& name, std::uint64_t seed = 1);

}  // namespace tracecoeff
