#include "tracecoeff/coefficients.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <stdexcept>
#include <thread>

namespace tracecoeff {

namespace {

Real zeta_value(const NumberField& f, int s, int order, int bits) {
    return dedekind_zeta(f, Real(s), order, bits)[static_cast<std::size_t>(order)].value;
}

CoefficientValue start(const PlaceSet& s, int n, std::string label) {
    CoefficientValue c;
    c.n = n;
    c.class_label = std::move(label);
    c.field_label = s.field.label;
    c.places = s.finite_places;
    return c;
}

void finish_product(CoefficientValue& c, const Real& relative_error) {
    Real v = 1;
    for (const auto& f : c.breakdown) v *= f.value;
    c.value = v;
    c.error = abs(v) * relative_error + abs(v) * ulp_scale(120);
}

Real relative(const Real& err, const Real& value) { return value == 0 ? Real(0) : err / abs(value); }

BigInt gcd_big(BigInt a, BigInt b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        BigInt r = a % b;
        a = b;
        b = r;
    }
    return a;
}

bool is_square(const BigInt& n, BigInt& root) {
    if (n < 0) return false;
    root = boost::multiprecision::sqrt(n);
    return root * root == n;
}

std::int64_t squarefree_part(std::int64_t n) {
    const int sign = n < 0 ? -1 : 1;
    std::int64_t a = n < 0 ? -n : n;
    std::int64_t out = 1;
    for (std::int64_t p = 2; p * p <= a; ++p) {
        int e = 0;
        while (a % p == 0) {
            a /= p;
            ++e;
        }
        if (e % 2) out *= p;
    }
    return sign * out * a;
}

}  // namespace

PartialLaurentData partial_laurent(const PlaceSet& s, int precision_bits) {
    return partial_laurent(laurent_data(s.field, precision_bits), s);
}

PartialLaurentData partial_laurent(const LaurentData& base, const PlaceSet& s) {
    PartialLaurentData out;
    out.base = base;
    out.places = s;
    out.lambda_m1_s = out.base.lambda_m1;
    out.lambda_0_s = out.base.lambda_0;
    out.lambda_1_s = out.base.lambda_1;
    out.error_m1_s = out.base.error_m1;
    out.error_0_s = out.base.error_0;
    out.error_1_s = out.base.error_1;
    for (const auto& v : s.finite_places) {
        // 1 - q^{-s} at s = 1 + e: (1 - 1/q) + (L/q) e - (L^2 / 2q) e^2 + ...
        const Real q(v.q);
        const Real l = log(q);
        const Real f0 = 1 - 1 / q;
        const Real f1 = l / q;
        const Real f2 = -l * l / (2 * q);
        const Real a = out.lambda_m1_s, b = out.lambda_0_s, c = out.lambda_1_s;
        const Real ea = out.error_m1_s, eb = out.error_0_s, ec = out.error_1_s;
        out.lambda_m1_s = f0 * a;
        out.lambda_0_s = f0 * b + f1 * a;
        out.lambda_1_s = f0 * c + f1 * b + f2 * a;
        const Real round = ulp_scale(120);
        out.error_m1_s = f0 * ea + round * abs(out.lambda_m1_s);
        out.error_0_s = f0 * eb + f1 * ea + round * (abs(f0 * b) + abs(f1 * a));
        out.error_1_s = f0 * ec + f1 * eb + abs(f2) * ea + round * (abs(f0 * c) + abs(f1 * b) + abs(f2 * a));
    }
    return out;
}

Real local_log_derivative_sum(const PlaceSet& s) {
    Real sum = 0;
    for (const auto& v : s.finite_places) sum += log(Real(v.q)) / Real(v.q - 1);
    return sum;
}

Real volume_gl(const NumberField& f, int n, int precision_bits) {
    if (n < 1) throw std::invalid_argument("volume_gl: n must be >= 1");
    Real v = laurent_data(f, precision_bits).lambda_m1;
    for (int k = 2; k <= n; ++k) v *= zeta_value(f, k, 0, precision_bits);
    return v;
}

CoefficientValue coeff_gl1(const PlaceSet& s, int precision_bits) {
    auto c = start(s, 1, "1^GL1");
    const auto base = laurent_data(s.field, precision_bits);
    c.breakdown.push_back({"lambda_m1", base.lambda_m1});
    finish_product(c, relative(base.error_m1, base.lambda_m1));
    c.eta = 0;
    return c;
}

CoefficientValue coeff_gl2_trivial(const PlaceSet& s, int precision_bits) {
    auto c = start(s, 2, "1^GL2");
    const auto base = laurent_data(s.field, precision_bits);
    const auto z2 = dedekind_zeta(s.field, Real(2), 0, precision_bits)[0];
    c.breakdown.push_back({"lambda_m1", base.lambda_m1});
    c.breakdown.push_back({"zeta_F(2)", z2.value});
    finish_product(c, relative(base.error_m1, base.lambda_m1) + relative(z2.error, z2.value));
    c.eta = 0;
    return c;
}

CoefficientValue coeff_gl2_regular(const PlaceSet& s, int precision_bits) {
    auto c = start(s, 2, "V_reg");
    const auto p = partial_laurent(s, precision_bits);
    const Real lm1 = p.base.lambda_m1;
    const Real ratio = p.lambda_0_s / p.lambda_m1_s;
    c.breakdown.push_back({"lambda_m1^2", lm1 * lm1});
    c.breakdown.push_back({"lambda_0^S/lambda_m1^S", ratio});
    const Real rel = 2 * relative(p.base.error_m1, lm1) + relative(p.error_0_s, p.lambda_0_s) +
                     relative(p.error_m1_s, p.lambda_m1_s);
    finish_product(c, rel);
    c.eta = 1;
    return c;
}

Real coeff_gl2_regular_additive(const PlaceSet& s, int precision_bits) {
    return gl2_regular_routes(partial_laurent(s, precision_bits)).additive;
}

Gl2Routes gl2_regular_routes(const PartialLaurentData& p) {
    const Real& lm1 = p.base.lambda_m1;
    const Real sum = local_log_derivative_sum(p.places);
    const Real ratio = p.lambda_0_s / p.lambda_m1_s;
    return {lm1 * lm1 * ratio, lm1 * p.base.lambda_0 + lm1 * lm1 * sum, ratio - p.base.lambda_0 / lm1, sum};
}

CoefficientValue coeff_gl3(const PlaceSet& s, Gl3Class which, int precision_bits) {
    const NumberField& f = s.field;
    switch (which) {
        case Gl3Class::regular: {
            auto c = start(s, 3, "V_reg");
            const auto p = partial_laurent(s, precision_bits);
            const Real lm1 = p.base.lambda_m1;
            const Real r0 = p.lambda_0_s / p.lambda_m1_s;
            const Real r1 = p.lambda_1_s / p.lambda_m1_s;
            c.breakdown.push_back({"lambda_m1^3", lm1 * lm1 * lm1});
            c.breakdown.push_back({"(lambda_0^S/lambda_m1^S)^2 + lambda_1^S/lambda_m1^S", r0 * r0 + r1});
            const Real rel_ratio = 2 * abs(r0) * relative(p.error_0_s, p.lambda_0_s) * abs(r0) +
                                   abs(r1) * relative(p.error_1_s, p.lambda_1_s) +
                                   (2 * r0 * r0 + abs(r1)) * relative(p.error_m1_s, p.lambda_m1_s);
            finish_product(c, 3 * relative(p.base.error_m1, lm1) + relative(rel_ratio, r0 * r0 + r1));
            c.eta = 2;
            return c;
        }
        case Gl3Class::subregular: {
            auto c = start(s, 3, "V_s-r");
            const auto base = laurent_data(f, precision_bits);
            const auto z = dedekind_zeta(f, Real(2), 1, precision_bits);
            Real ratio = z[1].value / z[0].value;
            for (const auto& v : s.finite_places) {
                const Real q(v.q);
                const Real q2 = 1 / (q * q);
                ratio += log(q) * q2 / (1 - q2);
            }
            c.breakdown.push_back({"vol GL2 = lambda_m1 zeta_F(2)", base.lambda_m1 * z[0].value});
            c.breakdown.push_back({"vol GL1 = lambda_m1", base.lambda_m1});
            c.breakdown.push_back({"zeta^S'(2)/zeta^S(2)", ratio});
            const Real rel = 2 * relative(base.error_m1, base.lambda_m1) + relative(z[0].error, z[0].value) +
                             relative(z[1].error / abs(z[0].value) + abs(z[1].value / z[0].value) *
                                                                         relative(z[0].error, z[0].value),
                                      ratio);
            finish_product(c, rel);
            c.eta = 1;
            return c;
        }
        case Gl3Class::trivial: {
            auto c = start(s, 3, "1^GL3");
            const auto base = laurent_data(f, precision_bits);
            const auto z2 = dedekind_zeta(f, Real(2), 0, precision_bits)[0];
            const auto z3 = dedekind_zeta(f, Real(3), 0, precision_bits)[0];
            c.breakdown.push_back({"lambda_m1", base.lambda_m1});
            c.breakdown.push_back({"zeta_F(2)", z2.value});
            c.breakdown.push_back({"zeta_F(3)", z3.value});
            finish_product(c, relative(base.error_m1, base.lambda_m1) + relative(z2.error, z2.value) +
                                  relative(z3.error, z3.value));
            c.eta = 0;
            return c;
        }
    }
    throw std::invalid_argument("coeff_gl3: unknown class");
}

CoefficientValue coeff_unipotent(const PlaceSet& s, const Partition& jordan, int precision_bits) {
    const int n = jordan.size();
    switch (n) {
        case 1:
            return coeff_gl1(s, precision_bits);
        case 2:
            return jordan.parts.size() == 1 ? coeff_gl2_regular(s, precision_bits)
                                            : coeff_gl2_trivial(s, precision_bits);
        case 3:
            if (jordan.parts.size() == 1) return coeff_gl3(s, Gl3Class::regular, precision_bits);
            if (jordan.parts.size() == 2) return coeff_gl3(s, Gl3Class::subregular, precision_bits);
            return coeff_gl3(s, Gl3Class::trivial, precision_bits);
        default:
            throw std::invalid_argument("coeff_unipotent: no exact coefficient for GL_" + std::to_string(n));
    }
}

CoefficientValue coeff_factorize(const Composition& levi, const std::vector<CoefficientValue>& per_block) {
    if (per_block.size() != levi.parts.size())
        throw std::invalid_argument("coeff_factorize: one coefficient per Levi block required");
    CoefficientValue out;
    out.n = levi.size();
    out.value = 1;
    out.error = 0;
    Real rel = 0;
    std::string label;
    for (std::size_t i = 0; i < per_block.size(); ++i) {
        const auto& b = per_block[i];
        if (levi.parts[i] > 3) throw std::invalid_argument("coeff_factorize: blocks of size > 3 are unsupported");
        if (b.n != levi.parts[i])
            throw std::invalid_argument("coeff_factorize: block " + std::to_string(i) + " is GL_" +
                                        std::to_string(b.n) + ", expected GL_" + std::to_string(levi.parts[i]));
        if (i == 0) {
            out.field_label = b.field_label;
            out.places = b.places;
        } else if (b.field_label != out.field_label || !(b.places == out.places)) {
            throw std::invalid_argument("coeff_factorize: blocks over different (F, S)");
        }
        label += (i ? "," : "") + b.class_label;
        out.value *= b.value;
        rel += relative(b.error, b.value);
        out.eta += b.eta;
        for (const auto& f : b.breakdown) out.breakdown.push_back({"block " + std::to_string(i + 1) + ": " + f.name, f.value});
    }
    out.class_label = "[" + label + "]^" + to_string(levi);
    out.error = abs(out.value) * rel;
    return out;
}

GeneralCoefficient coeff_general_gl2(const IntMatrix2& gamma, const PlaceSet& s, int precision_bits) {
    if (!s.field.is_rational()) throw std::invalid_argument("coeff_general_gl2: only F = Q is supported");
    // Scale to a primitive integral matrix with positive leading entry.
    BigInt lcm = 1;
    for (const auto& row : gamma)
        for (const auto& e : row) {
            const BigInt d = denominator(e);
            lcm = lcm / gcd_big(lcm, d) * d;
        }
    BigInt g = 0;
    for (const auto& row : gamma)
        for (const auto& e : row) g = gcd_big(g, numerator(Rational(e * lcm)));
    if (g == 0) throw std::invalid_argument("coeff_general_gl2: gamma is zero");
    Rational scale(lcm, g);
    const Rational* lead = nullptr;
    for (const auto& row : gamma)
        for (const auto& e : row)
            if (!lead && e != 0) lead = &e;
    if (*lead < 0) scale = -scale;

    GeneralCoefficient out;
    std::array<std::array<BigInt, 2>, 2> m;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const Rational v = gamma[i][j] * scale;
            out.normalized[i][j] = v;
            m[i][j] = numerator(v);
        }
    out.scale = scale;
    const BigInt tr = m[0][0] + m[1][1];
    const BigInt det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    if (det == 0) throw std::invalid_argument("coeff_general_gl2: gamma is not invertible");
    const BigInt disc = tr * tr - 4 * det;
    out.discriminant_check = true;

    BigInt root;
    if (disc == 0) {
        const bool central = m[0][1] == 0 && m[1][0] == 0 && m[0][0] == m[1][1];
        if (central) {
            out.kind = GeneralKind::central;
            out.coefficient = coeff_gl2_trivial(s, precision_bits);
            out.coefficient.class_label = "central, unipotent part 1^GL2";
        } else {
            out.kind = GeneralKind::central_unipotent;
            out.coefficient = coeff_gl2_regular(s, precision_bits);
            out.coefficient.class_label = "central, unipotent part V_reg";
        }
        return out;
    }
    if (is_square(disc, root)) {
        out.kind = GeneralKind::split;
        auto c = start(s, 2, "split semisimple");
        c.breakdown.push_back({"non-elliptic semisimple part", Real(0)});
        c.value = 0;
        c.error = 0;
        out.coefficient = std::move(c);
        return out;
    }
    if (abs(disc) > BigInt(std::numeric_limits<std::int64_t>::max() / 4))
        throw std::invalid_argument("coeff_general_gl2: discriminant too large");
    const auto m_e = squarefree_part(static_cast<std::int64_t>(disc));
    NumberField e = quadratic_field(m_e);
    EllipticDatum datum{{BigInt(1), BigInt(-tr), det}, e.abs_disc(), 1, abs(disc)};
    out.discriminant_check = BigInt(datum.extension_disc) <= datum.discr_norm;
    if (!out.discriminant_check)
        throw std::logic_error("coeff_general_gl2: D_E exceeds the discriminant of the characteristic polynomial");
    out.kind = GeneralKind::elliptic;
    auto c = start(s, 2, "elliptic, E = " + e.label);
    const auto base = laurent_data(e, precision_bits);
    c.breakdown.push_back({"lambda_m1^E", base.lambda_m1});
    finish_product(c, relative(base.error_m1, base.lambda_m1));
    c.eta = datum.k - 1;
    out.coefficient = std::move(c);
    out.elliptic = datum;
    out.splitting_field = std::move(e);
    return out;
}

Real bound_rhs(const PlaceSet& s, int eta, const Real& kappa, const Real& c) {
    if (eta < 0) throw std::invalid_argument("bound_rhs: eta must be >= 0");
    return c * pow(Real(s.field.abs_disc()), kappa) * zeta_factor(s.finite_places, eta).value;
}

ConjectureRatioReport conjecture_ratio_report(const PlaceSet& s, int n, const Partition& jordan, int precision_bits) {
    if (n != 2 && n != 3) throw std::invalid_argument("conjecture_ratio_report: n must be 2 or 3");
    if (jordan.size() != n) throw std::invalid_argument("conjecture_ratio_report: class is not a partition of n");
    ConjectureRatioReport r;
    r.field_label = s.field.label;
    r.disc = s.field.disc;
    r.jordan = jordan;
    r.richardson = richardson_levi(jordan);
    r.class_label = class_name(Partition({n}), {jordan});
    r.value = coeff_unipotent(s, jordan, precision_bits).value;
    r.denominator = 1;
    for (int m : r.richardson.parts) r.denominator *= volume_gl(s.field, m, precision_bits);
    r.ratio = r.value / r.denominator;
    r.eta = dimensions(jordan).dim_a_L_G;
    r.zeta_factor = zeta_factor(s.finite_places, r.eta).value;
    r.constant = abs(r.ratio) / r.zeta_factor;
    return r;
}

ConjectureSweep conjecture_sweep(const std::vector<NumberField>& family, const std::vector<std::int64_t>& primes,
                                 int n, const Partition& jordan, int precision_bits, int workers) {
    std::vector<std::optional<ConjectureRatioReport>> slots(family.size());
    std::vector<std::string> errors(family.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < family.size(); i = next++) {
            try {
                slots[i] = conjecture_ratio_report(place_set(family[i], primes), n, jordan, precision_bits);
            } catch (const std::exception& e) {
                errors[i] = e.what();
            }
        }
    };
    unsigned count = workers > 0 ? static_cast<unsigned>(workers) : std::max(1u, std::thread::hardware_concurrency());
    count = std::min<unsigned>(count, static_cast<unsigned>(std::max<std::size_t>(family.size(), 1)));
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < count; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
    for (std::size_t i = 0; i < family.size(); ++i)
        if (!errors[i].empty()) throw std::runtime_error("conjecture_sweep: " + family[i].label + ": " + errors[i]);

    std::vector<ConjectureRatioReport> rows;
    for (auto& r : slots) rows.push_back(std::move(*r));
    return summarize_sweep(std::move(rows));
}

ConjectureSweep summarize_sweep(std::vector<ConjectureRatioReport> rows) {
    ConjectureSweep out;
    out.rows = std::move(rows);
    std::stable_sort(out.rows.begin(), out.rows.end(), [](const auto& a, const auto& b) {
        const auto da = a.disc < 0 ? -a.disc : a.disc;
        const auto db = b.disc < 0 ? -b.disc : b.disc;
        if (da != db) return da < db;
        return a.disc < b.disc;
    });
    // Least squares for log constant = kappa log D + log C.
    Real sx = 0, sy = 0, sxx = 0, sxy = 0;
    int k = 0;
    for (const auto& r : out.rows) {
        const auto d = r.disc < 0 ? -r.disc : r.disc;
        if (d <= 1 || r.constant <= 0) continue;
        const Real x = log(Real(d));
        const Real y = log(r.constant);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++k;
    }
    const Real denom = k * sxx - sx * sx;
    out.fitted_kappa = k >= 2 && denom != 0 ? (k * sxy - sx * sy) / denom : Real(0);
    out.fitted_c = 0;
    for (const auto& r : out.rows) {
        const auto d = r.disc < 0 ? -r.disc : r.disc;
        const Real c = r.constant / pow(Real(d), out.fitted_kappa);
        if (c > out.fitted_c) out.fitted_c = c;
    }
    return out;
}

FundamentalDomainReport fundamental_domain_bounds(const NumberField& f, int n, std::int64_t samples,
                                                  std::uint64_t seed) {
    return fundamental_domain_radii(f, n, samples, seed);
}

}  // namespace tracecoeff
