#include "tracecoeff/number_field.hpp"

#include "tracecoeff/dirichlet.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace tracecoeff {

namespace {

using json = nlohmann::ordered_json;

Real factorial_real(int n) {
    Real out = 1;
    for (int i = 2; i <= n; ++i) out *= i;
    return out;
}

std::int64_t isqrt(std::int64_t n) {
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

struct needs_big_integers {};

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t out;
    if (__builtin_mul_overflow(a, b, &out)) throw needs_big_integers{};
    return out;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t out;
    if (__builtin_add_overflow(a, b, &out)) throw needs_big_integers{};
    return out;
}

BigInt gcd_big(const BigInt& a, const BigInt& b) { return boost::multiprecision::gcd(a, b); }

// The continued fraction of (b + sqrt D)/2 is purely periodic; the product of
// the complete quotients over one period is the fundamental unit (X + Y sqrt D)/Z.
template <typename Int, typename Mul, typename Add, typename Gcd>
void unit_from_period(std::int64_t d, Int& x, Int& y, Int& z, Mul mul, Add add, Gcd gcd) {
    const std::int64_t root = isqrt(d);
    const std::int64_t b0 = ((root - d) % 2 == 0) ? root : root - 1;
    std::int64_t p = b0;
    std::int64_t q = 2;
    x = Int(1);
    y = Int(0);
    z = Int(1);
    do {
        // x + y sqrt D times p + sqrt D
        Int nx = add(mul(x, Int(p)), mul(y, Int(d)));
        Int ny = add(x, mul(y, Int(p)));
        Int nz = mul(z, Int(q));
        Int g = gcd(gcd(nx, ny), nz);
        x = nx / g;
        y = ny / g;
        z = nz / g;
        const std::int64_t a = (p + root) / q;
        const std::int64_t p_next = a * q - p;
        const std::int64_t q_next = (d - p_next * p_next) / q;
        p = p_next;
        q = q_next;
    } while (!(p == b0 && q == 2));
}

std::int64_t parse_int_field(const json& rec, const char* key, bool required = true,
                             std::int64_t fallback = 0) {
    if (!rec.contains(key)) {
        if (required) throw std::invalid_argument(std::string("missing key '") + key + "'");
        return fallback;
    }
    const auto& v = rec.at(key);
    if (!v.is_number_integer()) throw std::invalid_argument(std::string("key '") + key + "' must be an integer");
    return v.get<std::int64_t>();
}

Real parse_decimal_field(const json& obj, const char* key) {
    if (!obj.contains(key)) throw std::invalid_argument(std::string("missing key '") + key + "'");
    const auto& v = obj.at(key);
    if (!v.is_string()) throw std::invalid_argument(std::string("key '") + key + "' must be a decimal string");
    return parse_real(v.get<std::string>());
}

std::string emit_decimal(const Real& x) {
    if (x == floor(x) && abs(x) < Real(1e15)) return std::to_string(x.convert_to<long long>());
    return to_decimal(x);
}

void validate_field(const NumberField& f) {
    const auto& sig = f.signature;
    if (sig.r1 < 0 || sig.r2 < 0 || sig.degree() < 1) throw std::invalid_argument("invalid signature");
    if (f.disc == 0) throw std::invalid_argument("discriminant must be nonzero");
    if ((f.disc < 0) != (sig.r2 % 2 == 1)) throw std::invalid_argument("sign of discriminant must be (-1)^r2");
    const std::int64_t r4 = ((f.disc % 4) + 4) % 4;
    if (r4 != 0 && r4 != 1) throw std::invalid_argument("discriminant must be 0 or 1 mod 4");
    if (sig.degree() == 1 && f.disc != 1) throw std::invalid_argument("Q has discriminant 1");
    if (sig.degree() >= 2 && f.abs_disc() < 3) throw std::invalid_argument("|disc| >= 3 for degree >= 2");
    if (f.class_number < 1) throw std::invalid_argument("class number must be >= 1");
    if (f.regulator <= 0) throw std::invalid_argument("regulator must be positive");
    if (f.roots_of_unity < 2 || f.roots_of_unity % 2 != 0)
        throw std::invalid_argument("roots of unity count must be even and >= 2");
    if (f.minkowski_constant() > f.delta() * (1 + ulp_scale(100)))
        throw std::invalid_argument("Minkowski constant exceeds sqrt|disc|");
    if (f.laurent) {
        const Real res = residue(f);
        if (f.laurent->lambda_m1 <= 0) throw std::invalid_argument("laurent.lm1 must be positive");
        if (abs(f.laurent->lambda_m1 - res) > Real(1e-6) * res)
            throw std::invalid_argument("laurent.lm1 disagrees with the class number formula");
    }
}

}  // namespace

Real NumberField::delta() const { return sqrt(Real(abs_disc())); }

Real NumberField::minkowski_constant() const {
    const int d = degree();
    return delta() * pow(Real(4) / pi(), signature.r2) * factorial_real(d) / pow(Real(d), d);
}

std::string quadratic_label(std::int64_t m) { return "Q(sqrt(" + std::to_string(m) + "))"; }

NumberField rational_field() {
    NumberField f;
    f.signature = {1, 0};
    f.disc = 1;
    f.class_number = 1;
    f.regulator = 1;
    f.roots_of_unity = 2;
    f.provenance = Provenance::computed_quadratic;
    f.label = "Q";
    f.radicand = 1;
    return f;
}

NumberField quadratic_field(std::int64_t m) {
    if (m == 0 || m == 1) throw std::invalid_argument("quadratic_field: m must differ from 0 and 1");
    if (!is_squarefree(m)) throw std::invalid_argument("quadratic_field: m = " + std::to_string(m) + " is not squarefree");
    NumberField f;
    f.disc = quadratic_discriminant(m);
    f.radicand = m;
    f.label = quadratic_label(m);
    f.provenance = Provenance::computed_quadratic;
    if (m < 0) {
        f.signature = {0, 1};
        f.class_number = imaginary_class_number(f.disc);
        f.regulator = 1;
        f.roots_of_unity = f.disc == -4 ? 4 : (f.disc == -3 ? 6 : 2);
    } else {
        f.signature = {2, 0};
        const FundamentalUnit eps = fundamental_unit(f.disc);
        f.regulator = log((to_real(eps.t) + to_real(eps.u) * sqrt(Real(f.disc))) / 2);
        f.roots_of_unity = 2;
        f.class_number = real_class_number(f.disc, f.regulator);
    }
    return f;
}

QuadraticForm reduce_form(QuadraticForm f) {
    if (f.a <= 0 || f.discriminant() >= 0) throw std::invalid_argument("reduce_form: form must be positive definite");
    for (;;) {
        // Normalize b into (-a, a].
        if (f.b > f.a || f.b <= -f.a) {
            const std::int64_t two_a = 2 * f.a;
            std::int64_t k = (f.a - f.b) / two_a;
            if ((f.a - f.b) % two_a < 0) --k;
            // b' = b + 2ak lies in (-a, a]
            const std::int64_t nb = f.b + two_a * k;
            f.c = (nb * nb - f.discriminant()) / (4 * f.a);
            f.b = nb;
        }
        if (f.a > f.c) {
            std::swap(f.a, f.c);
            f.b = -f.b;
            continue;
        }
        if (f.a == f.c && f.b < 0) f.b = -f.b;
        return f;
    }
}

std::vector<QuadraticForm> reduced_forms(std::int64_t d) {
    if (d >= 0) throw std::invalid_argument("reduced_forms: discriminant must be negative");
    if (((d % 4) + 4) % 4 > 1) throw std::invalid_argument("reduced_forms: discriminant must be 0 or 1 mod 4");
    std::vector<QuadraticForm> out;
    const std::int64_t n = -d;
    for (std::int64_t a = 1; 3 * a * a <= n; ++a) {
        for (std::int64_t b = -a + 1; b <= a; ++b) {
            const std::int64_t num = b * b - d;
            if (num % (4 * a) != 0) continue;
            const std::int64_t c = num / (4 * a);
            if (c < a) continue;
            if (c == a && b < 0) continue;
            if (std::gcd(std::gcd(a, b < 0 ? -b : b), c) != 1) continue;
            out.push_back({a, b, c});
        }
    }
    return out;
}

std::int64_t imaginary_class_number(std::int64_t d) {
    return static_cast<std::int64_t>(reduced_forms(d).size());
}

FundamentalUnit fundamental_unit(std::int64_t d) {
    if (d <= 4 || !is_fundamental_discriminant(d))
        throw std::invalid_argument("fundamental_unit: need a positive fundamental discriminant");
    FundamentalUnit out{};
    BigInt x, y, z;
    try {
        std::int64_t xs, ys, zs;
        unit_from_period(d, xs, ys, zs, checked_mul, checked_add,
                         [](std::int64_t a, std::int64_t b) { return std::gcd(a, b); });
        x = xs;
        y = ys;
        z = zs;
        out.used_big_integers = false;
    } catch (const needs_big_integers&) {
        unit_from_period(
            d, x, y, z, [](const BigInt& a, const BigInt& b) { return BigInt(a * b); },
            [](const BigInt& a, const BigInt& b) { return BigInt(a + b); }, gcd_big);
        out.used_big_integers = true;
    }
    if ((2 * x) % z != 0 || (2 * y) % z != 0) throw std::logic_error("fundamental_unit: non-integral unit");
    out.t = 2 * x / z;
    out.u = 2 * y / z;
    const BigInt n4 = out.t * out.t - BigInt(d) * out.u * out.u;
    if (n4 == 4) {
        out.norm = 1;
    } else if (n4 == -4) {
        out.norm = -1;
    } else {
        throw std::logic_error("fundamental_unit: t^2 - D u^2 is not +-4");
    }
    return out;
}

std::int64_t real_class_number(std::int64_t d, const Real& regulator) {
    // sqrt(D) L(1, chi) = -sum_{a<D} chi(a) log sin(pi a / D); chi is even, so fold a <-> D - a.
    Real sum = 0;
    for (std::int64_t a = 1; 2 * a < d; ++a) {
        const int chi = kronecker(d, a);
        if (chi == 0) continue;
        sum += chi * log(sin(pi() * a / d));
    }
    sum *= 2;
    const Real h = -sum / (2 * regulator);
    const Real nearest = round(h);
    if (abs(h - nearest) > Real(1e-20) || nearest < 1)
        throw std::runtime_error("real_class_number: value " + to_decimal(h, 30) + " is not certifiably an integer");
    return nearest.convert_to<std::int64_t>();
}

Real residue(const NumberField& f) {
    const Real two_pi = 2 * pi();
    return pow(Real(2), f.signature.r1) * pow(two_pi, f.signature.r2) * Real(f.class_number) * f.regulator /
           (Real(f.roots_of_unity) * f.delta());
}

LaurentData laurent_data(const NumberField& f, int precision_bits) {
    LaurentData out;
    out.precision_bits = precision_bits;
    // Stieltjes literals carry 50 digits.
    const Real constant_error = Real(1e-50);
    if (f.is_rational()) {
        out.lambda_m1 = 1;
        out.lambda_0 = euler_gamma();
        out.lambda_1 = -stieltjes_gamma1();
        out.error_m1 = 0;
        out.error_0 = constant_error;
        out.error_1 = constant_error;
        return out;
    }
    if (f.is_quadratic()) {
        const auto l = l_function_derivatives(f.disc, Real(1), 2, precision_bits);
        const Real& g = euler_gamma();
        const Real& g1 = stieltjes_gamma1();
        out.lambda_m1 = l[0].value;
        out.lambda_0 = g * l[0].value + l[1].value;
        out.lambda_1 = -g1 * l[0].value + g * l[1].value + l[2].value / 2;
        out.error_m1 = l[0].error;
        out.error_0 = g * l[0].error + l[1].error + constant_error * abs(l[0].value);
        out.error_1 = abs(g1) * l[0].error + g * l[1].error + l[2].error / 2 +
                      constant_error * (abs(l[0].value) + abs(l[1].value));
        return out;
    }
    if (f.laurent) return *f.laurent;
    throw std::domain_error("laurent_data: no Laurent path for field " + f.label +
                            " (degree > 2 without ingested Laurent data)");
}

std::vector<Approx> dedekind_zeta(const NumberField& f, const Real& s, int max_order, int precision_bits) {
    if (s < 2) throw std::domain_error("dedekind_zeta: only s >= 2 is supported");
    auto zeta = l_function_derivatives(1, s, max_order, precision_bits);
    if (f.is_rational()) return zeta;
    if (!f.is_quadratic())
        throw std::domain_error("dedekind_zeta: no zeta values for field " + f.label);
    const auto l = l_function_derivatives(f.disc, s, max_order, precision_bits);
    std::vector<Approx> out;
    for (int k = 0; k <= max_order; ++k) {
        Approx acc{Real(0), Real(0)};
        Real binom = 1;
        for (int j = 0; j <= k; ++j) {
            if (j > 0) binom = binom * (k - j + 1) / j;
            const auto& a = zeta[static_cast<std::size_t>(j)];
            const auto& b = l[static_cast<std::size_t>(k - j)];
            acc.value += binom * a.value * b.value;
            acc.error += binom * (abs(a.value) * b.error + abs(b.value) * a.error + a.error * b.error);
        }
        out.push_back(acc);
    }
    return out;
}

NumberField parse_field_record(const std::string& line) {
    json rec;
    try {
        rec = json::parse(line);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
    }
    if (!rec.is_object()) throw std::invalid_argument("record must be a JSON object");
    NumberField f;
    const std::int64_t degree = parse_int_field(rec, "degree");
    f.signature.r1 = static_cast<int>(parse_int_field(rec, "r1"));
    f.signature.r2 = static_cast<int>(parse_int_field(rec, "r2"));
    if (f.signature.degree() != degree) throw std::invalid_argument("r1 + 2*r2 must equal degree");
    f.disc = parse_int_field(rec, "disc");
    f.class_number = parse_int_field(rec, "h");
    f.regulator = parse_decimal_field(rec, "regulator");
    f.roots_of_unity = static_cast<int>(parse_int_field(rec, "w"));
    f.provenance = Provenance::ingested;
    if (rec.contains("label")) {
        if (!rec["label"].is_string()) throw std::invalid_argument("label must be a string");
        f.label = rec["label"].get<std::string>();
    }
    if (rec.contains("laurent")) {
        const auto& l = rec["laurent"];
        if (!l.is_object()) throw std::invalid_argument("laurent must be an object");
        LaurentData ld;
        ld.lambda_m1 = parse_decimal_field(l, "lm1");
        ld.lambda_0 = parse_decimal_field(l, "l0");
        ld.lambda_1 = parse_decimal_field(l, "l1");
        ld.precision_bits = kWorkingBits;
        ld.error_m1 = ld.error_0 = ld.error_1 = 0;
        f.laurent = ld;
    }
    if (degree == 1) {
        f.radicand = 1;
        if (f.label.empty()) f.label = "Q";
    } else if (degree == 2) {
        if (!is_fundamental_discriminant(f.disc)) throw std::invalid_argument("disc is not a fundamental discriminant");
        f.radicand = (((f.disc % 4) + 4) % 4 == 1) ? f.disc : f.disc / 4;
        if (f.label.empty()) f.label = quadratic_label(f.radicand);
    } else {
        f.radicand = 0;
        if (f.label.empty()) f.label = "deg" + std::to_string(degree) + "_disc" + std::to_string(f.disc);
    }
    validate_field(f);
    return f;
}

std::string emit_field_record(const NumberField& f) {
    json rec;
    rec["degree"] = f.degree();
    rec["r1"] = f.signature.r1;
    rec["r2"] = f.signature.r2;
    rec["disc"] = f.disc;
    rec["h"] = f.class_number;
    rec["regulator"] = emit_decimal(f.regulator);
    rec["w"] = f.roots_of_unity;
    rec["label"] = f.label;
    if (f.laurent) {
        rec["laurent"] = {{"lm1", to_decimal(f.laurent->lambda_m1)},
                          {"l0", to_decimal(f.laurent->lambda_0)},
                          {"l1", to_decimal(f.laurent->lambda_1)}};
    }
    return rec.dump();
}

IngestResult ingest_field_lines(std::istream& in) {
    IngestResult out;
    std::string line;
    for (int line_no = 1; std::getline(in, line); ++line_no) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            out.fields.push_back(parse_field_record(line));
        } catch (const std::exception& e) {
            out.errors.push_back("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return out;
}

IngestResult ingest_fields(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("ingest_fields: cannot open " + path);
    return ingest_field_lines(in);
}

bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

std::vector<FinitePlace> places_above(const NumberField& f, std::int64_t p) {
    if (!is_prime(p)) throw std::invalid_argument("places_above: " + std::to_string(p) + " is not prime");
    if (f.is_rational()) return {{p, 1, p, 0}};
    if (!f.is_quadratic())
        throw std::domain_error("places_above: no splitting data for field " + f.label);
    switch (kronecker(f.disc, p)) {
        case 1:
            return {{p, 1, p, 0}, {p, 1, p, 1}};
        case -1:
            return {{p * p, 1, p, 0}};
        default: {
            std::int64_t dn = 1;
            for (std::int64_t rest = f.abs_disc(); rest % p == 0; rest /= p) dn *= p;
            return {{p, dn, p, 0}};
        }
    }
}

PlaceSet place_set(const NumberField& f, std::vector<FinitePlace> places) {
    for (std::size_t i = 0; i < places.size(); ++i)
        for (std::size_t j = i + 1; j < places.size(); ++j)
            if (places[i].over_prime == places[j].over_prime && places[i].index == places[j].index)
                throw std::invalid_argument("place_set: duplicate place above " + std::to_string(places[i].over_prime));
    return PlaceSet{f, std::move(places)};
}

PlaceSet place_set(const NumberField& f, const std::vector<std::int64_t>& primes) {
    std::vector<FinitePlace> places;
    for (auto p : primes) {
        auto above = places_above(f, p);
        places.insert(places.end(), above.begin(), above.end());
    }
    return place_set(f, std::move(places));
}

ClassNumberBoundReport verify_class_number_bound(const NumberField& f) {
    const int d = f.degree();
    if (d < 2) throw std::domain_error("verify_class_number_bound: not applicable to degree 1");
    const Real log_d = log(Real(f.abs_disc()));
    const Real rhs = pow(Real(2) / pi(), f.signature.r2) * f.delta() * pow(Real(d - 1) + log_d, d - 1) /
                     factorial_real(d - 1);
    const Real lhs(f.class_number);
    return {lhs <= rhs, lhs, rhs};
}

BrauerSiegelReport brauer_siegel_sweep(const std::vector<NumberField>& family, int k, double eps,
                                       int precision_bits) {
    if (family.empty()) throw std::invalid_argument("brauer_siegel_sweep: empty family");
    if (k < -1 || k > 1) throw std::invalid_argument("brauer_siegel_sweep: k must be -1, 0 or 1");
    if (!(eps > 0)) throw std::invalid_argument("brauer_siegel_sweep: eps must be positive");
    const int d = family.front().degree();
    for (const auto& f : family)
        if (f.degree() != d) throw std::invalid_argument("brauer_siegel_sweep: mixed degrees in family");
    BrauerSiegelReport out{k, eps, Real(0), Real(0), {}};
    for (const auto& f : family) {
        BrauerSiegelRow row{f.label, f.disc, Real(0), Real(0), Real(0)};
        if (k == -1) {
            row.lambda = residue(f);
        } else {
            const auto ld = laurent_data(f, precision_bits);
            row.lambda = k == 0 ? ld.lambda_0 : ld.lambda_1;
        }
        const Real big_d(f.abs_disc());
        row.ratio_eps = abs(row.lambda) / pow(big_d, Real(eps));
        out.fitted_c = std::max(out.fitted_c, row.ratio_eps);
        if (k == -1) {
            const Real denom = pow(log(big_d), d - 1);
            if (denom > 0) {
                row.ratio_log = abs(row.lambda) / denom;
                out.fitted_c_log = std::max(out.fitted_c_log, row.ratio_log);
            }
        }
        out.rows.push_back(std::move(row));
    }
    return out;
}

FieldCache::FieldCache(std::string path) : path_(std::move(path)) {
    std::ifstream in(path_);
    if (in) entries_ = ingest_field_lines(in).fields;
}

std::optional<NumberField> FieldCache::find(const std::string& label) const {
    std::shared_lock lock(mutex_);
    for (auto it = entries_.rbegin(); it != entries_.rend(); ++it)
        if (it->label == label) return *it;
    return std::nullopt;
}

void FieldCache::store(const NumberField& f) {
    std::unique_lock lock(mutex_);
    std::ofstream out(path_, std::ios::app);
    if (!out) throw std::runtime_error("FieldCache: cannot append to " + path_);
    out << emit_field_record(f) << '\n';
    entries_.push_back(f);
}

std::size_t FieldCache::size() const {
    std::shared_lock lock(mutex_);
    return entries_.size();
}

NumberField field_from_spec(const std::string& spec) {
    if (spec == "Q" || spec == "1") return rational_field();
    if (spec == "Q(i)") return quadratic_field(-1);
    std::string body = spec;
    for (const std::string prefix : {"Q(sqrt(", "Q(sqrt "}) {
        if (body.rfind(prefix, 0) == 0) {
            body = body.substr(prefix.size());
            while (!body.empty() && body.back() == ')') body.pop_back();
            break;
        }
    }
    std::size_t used = 0;
    std::int64_t m = 0;
    try {
        m = std::stoll(body, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("unknown field spec '" + spec + "'");
    }
    if (used != body.size()) throw std::invalid_argument("unknown field spec '" + spec + "'");
    if (m == 1) return rational_field();
    return quadratic_field(m);
}

}  // namespace tracecoeff
