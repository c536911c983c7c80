#include "tracecoeff/gln_combinatorics.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

namespace tracecoeff {

namespace {

std::string join_parts(const std::vector<int>& parts) {
    std::string out = "(";
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(parts[i]);
    }
    return out + ")";
}

void partitions_rec(int remaining, int max_part, std::vector<int>& cur, std::vector<Partition>& out) {
    if (remaining == 0) {
        out.emplace_back(cur);
        return;
    }
    for (int p = std::min(remaining, max_part); p >= 1; --p) {
        cur.push_back(p);
        partitions_rec(remaining - p, p, cur, out);
        cur.pop_back();
    }
}

using BigMatrix = std::vector<std::vector<BigInt>>;

int rank_of(BigMatrix m) {
    // Fraction-free Gaussian elimination.
    const std::size_t rows = m.size();
    const std::size_t cols = rows ? m[0].size() : 0;
    int rank = 0;
    BigInt prev = 1;
    for (std::size_t c = 0; c < cols && static_cast<std::size_t>(rank) < rows; ++c) {
        const auto r0 = static_cast<std::size_t>(rank);
        std::size_t piv = r0;
        while (piv < rows && m[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[piv], m[r0]);
        for (std::size_t r = r0 + 1; r < rows; ++r) {
            for (std::size_t k = c + 1; k < cols; ++k) m[r][k] = (m[r0][c] * m[r][k] - m[r][c] * m[r0][k]) / prev;
            m[r][c] = 0;
        }
        prev = m[r0][c];
        ++rank;
    }
    return rank;
}

BigMatrix multiply(const BigMatrix& a, const BigMatrix& b) {
    const std::size_t n = a.size();
    BigMatrix out(n, std::vector<BigInt>(n, BigInt(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            if (a[i][k] == 0) continue;
            for (std::size_t j = 0; j < n; ++j) out[i][j] += a[i][k] * b[k][j];
        }
    return out;
}

void check_blocks(const Composition& levi, const std::vector<Partition>& blocks) {
    if (levi.parts.size() != blocks.size()) throw std::invalid_argument("induce: one class per Levi block required");
    for (std::size_t i = 0; i < blocks.size(); ++i)
        if (blocks[i].size() != levi.parts[i])
            throw std::invalid_argument("induce: class " + to_string(blocks[i]) + " does not match block size " +
                                        std::to_string(levi.parts[i]));
}

std::int64_t factorial(int n) {
    std::int64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

bool is_trivial(const Partition& p) { return p.parts.front() == 1; }
bool is_regular(const Partition& p) { return p.parts.size() == 1; }

}  // namespace

Composition::Composition(std::vector<int> p) : parts(std::move(p)) {
    if (parts.empty()) throw std::invalid_argument("composition: no parts");
    for (int v : parts)
        if (v < 1) throw std::invalid_argument("composition: parts must be >= 1");
}

int Composition::size() const { return std::accumulate(parts.begin(), parts.end(), 0); }

Partition::Partition(std::vector<int> p) : parts(std::move(p)) {
    if (parts.empty()) throw std::invalid_argument("partition: no parts");
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (parts[i] < 1) throw std::invalid_argument("partition: parts must be >= 1");
        if (i && parts[i] > parts[i - 1]) throw std::invalid_argument("partition: parts must be nonincreasing");
    }
}

int Partition::size() const { return std::accumulate(parts.begin(), parts.end(), 0); }

std::string to_string(const Partition& p) { return join_parts(p.parts); }
std::string to_string(const Composition& c) { return join_parts(c.parts); }

std::vector<Partition> partitions(int n) {
    if (n < 1) throw std::invalid_argument("partitions: n must be >= 1");
    std::vector<Partition> out;
    std::vector<int> cur;
    partitions_rec(n, n, cur, out);
    return out;
}

Partition conjugate(const Partition& p) {
    std::vector<int> out(static_cast<std::size_t>(p.parts.front()), 0);
    for (int v : p.parts)
        for (int i = 0; i < v; ++i) ++out[static_cast<std::size_t>(i)];
    return Partition(std::move(out));
}

bool dominates(const Partition& lambda, const Partition& mu) {
    if (lambda.size() != mu.size()) throw std::invalid_argument("dominates: partitions of different sizes");
    int a = 0, b = 0;
    const std::size_t len = std::max(lambda.parts.size(), mu.parts.size());
    for (std::size_t i = 0; i < len; ++i) {
        a += i < lambda.parts.size() ? lambda.parts[i] : 0;
        b += i < mu.parts.size() ? mu.parts[i] : 0;
        if (a < b) return false;
    }
    return true;
}

Partition trivial_class(int n) { return Partition(std::vector<int>(static_cast<std::size_t>(n), 1)); }
Partition regular_class(int n) { return Partition({n}); }

Partition induce(const Composition& levi, const std::vector<Partition>& classes_per_block) {
    check_blocks(levi, classes_per_block);
    std::vector<int> sum;
    for (const auto& p : classes_per_block) {
        if (p.parts.size() > sum.size()) sum.resize(p.parts.size(), 0);
        for (std::size_t i = 0; i < p.parts.size(); ++i) sum[i] += p.parts[i];
    }
    return Partition(std::move(sum));
}

Partition jordan_type(const std::vector<std::vector<std::int64_t>>& nilpotent) {
    const std::size_t n = nilpotent.size();
    if (n == 0) throw std::invalid_argument("jordan_type: empty matrix");
    BigMatrix base(n, std::vector<BigInt>(n));
    for (std::size_t i = 0; i < n; ++i) {
        if (nilpotent[i].size() != n) throw std::invalid_argument("jordan_type: matrix must be square");
        for (std::size_t j = 0; j < n; ++j) base[i][j] = nilpotent[i][j];
    }
    // ranks[k] = rank N^k; blocks of size >= k number ranks[k-1] - ranks[k].
    std::vector<int> ranks{static_cast<int>(n)};
    BigMatrix power = base;
    while (ranks.back() > 0) {
        if (ranks.size() > n) throw std::invalid_argument("jordan_type: matrix is not nilpotent");
        ranks.push_back(rank_of(power));
        power = multiply(power, base);
    }
    std::vector<int> parts;
    for (std::size_t k = ranks.size() - 1; k >= 1; --k) {
        const int at_least_k = ranks[k - 1] - ranks[k];
        const int at_least_next = k + 1 < ranks.size() ? ranks[k] - ranks[k + 1] : 0;
        for (int c = 0; c < at_least_k - at_least_next; ++c) parts.push_back(static_cast<int>(k));
    }
    return Partition(std::move(parts));
}

Partition induce_oracle(const Composition& levi, const std::vector<Partition>& classes_per_block, int trials,
                        std::uint64_t seed) {
    check_blocks(levi, classes_per_block);
    if (trials < 1) throw std::invalid_argument("induce_oracle: trials must be >= 1");
    const int n = levi.size();
    if (n > 8) throw std::invalid_argument("induce_oracle: n must be <= 8");
    std::vector<int> block_of(static_cast<std::size_t>(n));
    std::vector<std::vector<std::int64_t>> fixed(static_cast<std::size_t>(n), std::vector<std::int64_t>(n, 0));
    int offset = 0;
    for (std::size_t b = 0; b < levi.parts.size(); ++b) {
        int pos = offset;
        for (int len : classes_per_block[b].parts) {
            for (int k = 0; k + 1 < len; ++k) fixed[pos + k][pos + k + 1] = 1;
            pos += len;
        }
        for (int i = offset; i < offset + levi.parts[b]; ++i) block_of[i] = static_cast<int>(b);
        offset += levi.parts[b];
    }
    std::optional<Partition> best;
    for (int t = 0; t < trials; ++t) {
        std::mt19937_64 rng(splitmix(seed ^ splitmix(static_cast<std::uint64_t>(t))));
        std::uniform_int_distribution<int> entry(-3, 3);
        auto m = fixed;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (block_of[i] < block_of[j]) m[i][j] = entry(rng);
        Partition p = jordan_type(m);
        if (!best || (p != *best && dominates(p, *best))) best = std::move(p);
    }
    return *best;
}

Partition richardson_levi(const Partition& v) { return conjugate(v); }

ClassDimensions dimensions(const Partition& v) {
    const int n = v.size();
    const Partition m = richardson_levi(v);
    int sq = 0;
    std::int64_t weyl = 1;
    for (int p : m.parts) {
        sq += p * p;
        weyl *= factorial(p);
    }
    const int dim_u = (n * n - sq) / 2;
    return {2 * dim_u, dim_u, static_cast<int>(m.parts.size()) - 1, weyl, factorial(n)};
}

std::vector<UnipotentClass> unipotent_classes(int n) {
    std::vector<UnipotentClass> out;
    for (auto& p : partitions(n)) {
        Partition r = richardson_levi(p);
        const auto dims = dimensions(p);
        out.push_back({std::move(p), std::move(r), dims});
    }
    return out;
}

std::string levi_name(const Partition& levi) {
    const int n = levi.size();
    if (levi.parts.size() == 1) return "GL" + std::to_string(n);
    if (levi.parts.front() == 1) return "T0";
    std::string out;
    for (int p : levi.parts) out += (out.empty() ? "" : "x") + std::string("GL") + std::to_string(p);
    return out;
}

std::string class_name(const Partition& levi, const std::vector<Partition>& blocks) {
    if (blocks.size() != levi.parts.size()) throw std::invalid_argument("class_name: one class per block required");
    const std::string name = levi_name(levi);
    const bool all_trivial = std::all_of(blocks.begin(), blocks.end(), is_trivial);
    if (all_trivial) return "1^" + name;
    if (blocks.size() == 1) {
        const Partition& p = blocks.front();
        const int n = p.size();
        if (is_regular(p)) return "V_reg";
        if (n >= 3 && p.parts.size() == 2 && p.parts[1] == 1) return "V_s-r";
        return "V_" + to_string(p);
    }
    if (std::all_of(blocks.begin(), blocks.end(), is_regular)) return "V_reg^" + name;
    std::string out = "V_[";
    for (std::size_t i = 0; i < blocks.size(); ++i) out += (i ? "," : "") + to_string(blocks[i]);
    return out + "]^" + name;
}

std::vector<InductionRow> induction_table(int n) {
    auto levis = partitions(n);
    std::reverse(levis.begin(), levis.end());  // torus first, G last
    std::vector<InductionRow> out;
    for (const auto& levi : levis) {
        std::vector<std::vector<Partition>> choices;
        for (int p : levi.parts) {
            auto c = partitions(p);
            std::reverse(c.begin(), c.end());  // trivial first
            choices.push_back(std::move(c));
        }
        std::vector<std::size_t> idx(levi.parts.size(), 0);
        for (;;) {
            // Blocks of equal size are permuted by the Weyl group; keep nondecreasing indices.
            bool canonical = true;
            for (std::size_t b = 1; b < idx.size(); ++b)
                if (levi.parts[b] == levi.parts[b - 1] && idx[b] < idx[b - 1]) canonical = false;
            if (canonical) {
                std::vector<Partition> blocks;
                for (std::size_t b = 0; b < idx.size(); ++b) blocks.push_back(choices[b][idx[b]]);
                Partition induced = induce(Composition(levi.parts), blocks);
                Partition rich = richardson_levi(induced);
                out.push_back({levi, std::move(blocks), std::move(induced), std::move(rich)});
            }
            std::size_t b = idx.size();
            while (b > 0 && idx[b - 1] + 1 == choices[b - 1].size()) idx[--b] = 0;
            if (b == 0) break;
            ++idx[b - 1];
        }
    }
    return out;
}

Rational RootDatum::pairing(const std::vector<Rational>& x, const std::vector<Rational>& y) const {
    if (x.size() != y.size()) throw std::invalid_argument("pairing: length mismatch");
    Rational s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

RootDatum root_datum(int n) {
    if (n < 1) throw std::invalid_argument("root_datum: n must be >= 1");
    RootDatum r;
    r.n = n;
    const auto un = static_cast<std::size_t>(n);
    for (int i = 0; i + 1 < n; ++i) {
        std::vector<Rational> a(un, Rational(0));
        a[i] = 1;
        a[i + 1] = -1;
        r.simple_roots.push_back(a);
        r.simple_coroots.push_back(a);
        // Projection of e_1 + ... + e_{i+1} to the trace-zero part.
        std::vector<Rational> w(un, Rational(-(i + 1), n));
        for (int k = 0; k <= i; ++k) w[k] += 1;
        r.fundamental_weights.push_back(w);
        r.fundamental_coweights.push_back(w);
    }
    for (int i = 0; i < n; ++i) r.rho.push_back(Rational(n - 1 - 2 * i, 2));
    r.rho_check = r.rho;
    return r;
}

ReductionConstants reduction_constants(const NumberField& f, int n) {
    if (n < 2) throw std::invalid_argument("reduction_constants: n must be >= 2");
    ReductionConstants out;
    out.field_label = f.label;
    const int d = f.signature.degree();
    const Real disc = Real(f.abs_disc());
    out.c_f = pow(pi() / 4, d) / disc;
    if (!(out.c_f < 1)) throw std::logic_error("reduction_constants: c_F must be < 1");
    const Real log_c = log(out.c_f);
    const auto datum = root_datum(n);
    for (const auto& v : datum.rho_check) out.t1.push_back(log_c * to_real(v));
    out.all_at_least_one = true;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            RootGap g;
            g.i = i;
            g.j = j;
            g.alpha_rho_check = j - i;
            // -alpha(T1) = -(T1_i - T1_j)
            g.exp_minus_alpha_t1 = exp(out.t1[j - 1] - out.t1[i - 1]);
            g.normalized = g.exp_minus_alpha_t1 / pow(disc, j - i);
            g.normalized_bound = pow(4 / pi(), d * (j - i));
            if (g.exp_minus_alpha_t1 < 1) out.all_at_least_one = false;
            out.gaps.push_back(std::move(g));
        }
    return out;
}

namespace {

ComplexReal embed(const QuadraticRing& ring, const QuadElement& a) {
    // omega = (T + sqrt(m)) / 2 with m < 0, or omega = sqrt(m) real when m > 0.
    const Real x = to_real(a.x);
    const Real y = to_real(a.y);
    if (ring.radicand < 0) {
        const Real s = sqrt(Real(-ring.radicand));
        const Real im = ring.trace == 1 ? s / 2 : s;
        return {x + y * Real(ring.trace) / 2, y * im};
    }
    throw std::invalid_argument("siegel: real quadratic fields are not supported");
}

ComplexReal cmul(const ComplexReal& a, const ComplexReal& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

ComplexReal cadd(const ComplexReal& a, const ComplexReal& b) { return {a.re + b.re, a.im + b.im}; }

Real cabs2(const ComplexReal& a) { return a.re * a.re + a.im * a.im; }

QuadElement sub(const QuadElement& a, const QuadElement& b) { return {a.x - b.x, a.y - b.y}; }

bool is_zero(const QuadElement& a) { return a.x == 0 && a.y == 0; }

BigInt floor_of(const Rational& r) {
    BigInt q = numerator(r) / denominator(r);
    if (q * denominator(r) > numerator(r)) --q;
    return q;
}

// a = q b + r with N(r) < N(b), choosing q among integral points next to a/b.
std::pair<QuadElement, QuadElement> euclid_step(const QuadraticRing& ring, const QuadElement& a, const QuadElement& b) {
    const Rational nb = ring.nm(b);
    const QuadElement t = ring.mul(a, ring.conj(b));
    const QuadElement exact{t.x / nb, t.y / nb};
    const BigInt fx = floor_of(exact.x);
    const BigInt fy = floor_of(exact.y);
    std::optional<std::pair<QuadElement, QuadElement>> best;
    Rational best_norm;
    for (int dy = -1; dy <= 2; ++dy)
        for (int dx = -1; dx <= 2; ++dx) {
            const QuadElement q{Rational(fx + dx), Rational(fy + dy)};
            const QuadElement r = sub(a, ring.mul(q, b));
            const Rational nr = ring.nm(r);
            if (!best || nr < best_norm) {
                best = {q, r};
                best_norm = nr;
            }
        }
    if (!(best_norm < nb)) throw std::invalid_argument("siegel: Euclidean division failed in O_F");
    return *best;
}

// Returns (x, y, g) with x a + y b = g.
std::array<QuadElement, 3> extended_euclid(const QuadraticRing& ring, QuadElement a, QuadElement b) {
    QuadElement x0{1, 0}, y0{0, 0}, x1{0, 0}, y1{1, 0};
    while (!is_zero(b)) {
        auto [q, r] = euclid_step(ring, a, b);
        const QuadElement x2 = sub(x0, ring.mul(q, x1));
        const QuadElement y2 = sub(y0, ring.mul(q, y1));
        a = b;
        b = r;
        x0 = x1;
        y0 = y1;
        x1 = x2;
        y1 = y2;
    }
    return {x0, y0, a};
}

QuadElement inverse_unit(const QuadraticRing& ring, const QuadElement& u) {
    const Rational n = ring.nm(u);
    if (n != 1) throw std::invalid_argument("siegel: O_F^2 vector is not primitive");
    return ring.conj(u);
}

}  // namespace

bool siegel_supported(const NumberField& f) {
    if (f.is_rational()) return true;
    if (!f.is_imaginary_quadratic()) return false;
    const std::int64_t m = f.radicand;
    return m == -1 || m == -2 || m == -3 || m == -7 || m == -11;
}

SiegelCertificate gl2_siegel_certify(const NumberField& f, const Matrix2& g) {
    if (!siegel_supported(f)) {
        if (f.class_number != 1) throw std::invalid_argument("siegel: field must have class number 1");
        throw std::invalid_argument("siegel: unsupported field " + f.label + " (no Euclidean completion)");
    }
    const bool rational = f.is_rational();
    const QuadraticRing ring(rational ? -1 : f.radicand);
    const ComplexReal det = cadd(cmul(g[0][0], g[1][1]), cmul({-g[0][1].re, -g[0][1].im}, g[1][0]));
    const Real det_abs = sqrt(cabs2(det));
    if (det_abs == 0) throw std::invalid_argument("siegel: g is singular");
    if (rational)
        for (const auto& row : g)
            for (const auto& e : row)
                if (e.im != 0) throw std::invalid_argument("siegel: g must be real over Q");

    // Real lattice spanned by the rows of g and their omega multiples.
    RealMatrix rows;
    std::vector<std::array<QuadElement, 2>> generators;
    for (int k = 0; k < 2; ++k) {
        const int units = rational ? 1 : 2;
        for (int s = 0; s < units; ++s) {
            const QuadElement w = s == 0 ? QuadElement{1, 0} : QuadElement{0, 1};
            const ComplexReal c = rational ? ComplexReal{1, 0} : embed(ring, w);
            std::vector<Real> v;
            for (int col = 0; col < 2; ++col) {
                const ComplexReal e = cmul(c, g[k][col]);
                v.push_back(e.re);
                if (!rational) v.push_back(e.im);
            }
            rows.push_back(std::move(v));
            std::array<QuadElement, 2> z{QuadElement{0, 0}, QuadElement{0, 0}};
            z[k] = w;
            generators.push_back(z);
        }
    }
    const Lattice lat = Lattice::from_real_basis(Signature{static_cast<int>(rows.size()), 0}, rows);
    const auto minima = successive_minima(lat);
    const Coefficients& x = minima.witnesses.front();
    std::array<QuadElement, 2> z0{QuadElement{0, 0}, QuadElement{0, 0}};
    for (std::size_t i = 0; i < x.size(); ++i)
        for (int k = 0; k < 2; ++k) {
            z0[k].x += generators[i][k].x * x[i];
            z0[k].y += generators[i][k].y * x[i];
        }

    // Complete to gamma = [[a, b], [z0_1, z0_2]] with a z0_2 - b z0_1 = 1.
    auto [s, t, gcd] = extended_euclid(ring, z0[0], z0[1]);
    const QuadElement inv = inverse_unit(ring, gcd);
    s = ring.mul(s, inv);
    t = ring.mul(t, inv);
    SiegelCertificate out;
    out.gamma = {{{t, {-s.x, -s.y}}, {z0[0], z0[1]}}};
    out.z0 = z0;
    const QuadraticRing& r = ring;
    const QuadElement check = sub(r.mul(out.gamma[0][0], out.gamma[1][1]), r.mul(out.gamma[0][1], out.gamma[1][0]));
    if (check.x != 1 || check.y != 0) throw std::logic_error("siegel: completion has determinant != 1");

    out.min_norm2 = minima.squares.front();
    const int e_v = rational ? 1 : 2;
    // Bottom row of gamma g is a_2 k_2, so |a_2|^2 = ||z0 g||^2 and |a_1| |a_2| = |det g|.
    out.gap = pow(det_abs / out.min_norm2, e_v);
    out.c_f = rational ? pi() / 4 : pow(pi() / 4, 2) / Real(f.abs_disc());
    out.certified = out.gap >= out.c_f;
    if (!out.certified) throw std::logic_error("siegel: gap below c_F");
    return out;
}

Matrix2 random_gl2(const NumberField& f, std::uint64_t seed) {
    std::mt19937_64 rng(splitmix(seed));
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    const bool complex = !f.is_rational();
    for (;;) {
        Matrix2 g;
        for (auto& row : g)
            for (auto& e : row) e = {Real(u(rng)), complex ? Real(u(rng)) : Real(0)};
        const ComplexReal det = cadd(cmul(g[0][0], g[1][1]), cmul({-g[0][1].re, -g[0][1].im}, g[1][0]));
        const Real a = sqrt(cabs2(det));
        if (a < Real(1) / 16) continue;
        const Real scale = 1 / sqrt(a);
        for (auto& row : g)
            for (auto& e : row) e = {e.re * scale, e.im * scale};
        return g;
    }
}

}  // namespace tracecoeff
