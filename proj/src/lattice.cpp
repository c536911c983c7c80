#include "tracecoeff/lattice.hpp"

#include "tracecoeff/dirichlet.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>

namespace tracecoeff {

namespace {

using DoubleMatrix = std::vector<std::vector<double>>;

RealMatrix to_real_matrix(const RationalMatrix& m) {
    RealMatrix out(m.size());
    for (std::size_t i = 0; i < m.size(); ++i)
        for (const auto& v : m[i]) out[i].push_back(tracecoeff::to_real(v));
    return out;
}

DoubleMatrix to_double(const RealMatrix& m) {
    DoubleMatrix out(m.size());
    for (std::size_t i = 0; i < m.size(); ++i)
        for (const auto& v : m[i]) out[i].push_back(v.convert_to<double>());
    return out;
}

void check_square(const RealMatrix& rows, int d, const char* what) {
    if (static_cast<int>(rows.size()) != d) throw std::invalid_argument(std::string(what) + ": need d basis rows");
    for (const auto& r : rows)
        if (static_cast<int>(r.size()) != d) throw std::invalid_argument(std::string(what) + ": rows must have d coordinates");
}

/// Upper-triangular R with G = R^T R; nullopt if G is not positive definite.
std::optional<RealMatrix> cholesky(const RealMatrix& g) {
    const std::size_t d = g.size();
    RealMatrix r(d, std::vector<Real>(d, Real(0)));
    for (std::size_t i = 0; i < d; ++i) {
        Real diag = g[i][i];
        for (std::size_t k = 0; k < i; ++k) diag -= r[k][i] * r[k][i];
        if (!(diag > 0)) return std::nullopt;
        r[i][i] = sqrt(diag);
        for (std::size_t j = i + 1; j < d; ++j) {
            Real v = g[i][j];
            for (std::size_t k = 0; k < i; ++k) v -= r[k][i] * r[k][j];
            r[i][j] = v / r[i][i];
        }
    }
    return r;
}

RationalMatrix invert(const RationalMatrix& m) {
    const std::size_t d = m.size();
    RationalMatrix a = m;
    RationalMatrix inv(d, std::vector<Rational>(d, Rational(0)));
    for (std::size_t i = 0; i < d; ++i) inv[i][i] = 1;
    for (std::size_t c = 0; c < d; ++c) {
        std::size_t p = c;
        while (p < d && a[p][c] == 0) ++p;
        if (p == d) throw std::domain_error("singular Gram matrix");
        std::swap(a[p], a[c]);
        std::swap(inv[p], inv[c]);
        const Rational piv = a[c][c];
        for (std::size_t j = 0; j < d; ++j) {
            a[c][j] /= piv;
            inv[c][j] /= piv;
        }
        for (std::size_t r = 0; r < d; ++r) {
            if (r == c || a[r][c] == 0) continue;
            const Rational f = a[r][c];
            for (std::size_t j = 0; j < d; ++j) {
                a[r][j] -= f * a[c][j];
                inv[r][j] -= f * inv[c][j];
            }
        }
    }
    return inv;
}

RealMatrix invert(const RealMatrix& m) {
    const std::size_t d = m.size();
    RealMatrix a = m;
    RealMatrix inv(d, std::vector<Real>(d, Real(0)));
    Real scale = 0;
    for (std::size_t i = 0; i < d; ++i) {
        inv[i][i] = 1;
        for (const auto& v : m[i]) scale = std::max(scale, abs(v));
    }
    for (std::size_t c = 0; c < d; ++c) {
        std::size_t p = c;
        for (std::size_t r = c + 1; r < d; ++r)
            if (abs(a[r][c]) > abs(a[p][c])) p = r;
        if (abs(a[p][c]) <= scale * ulp_scale(kWorkingBits - 24))
            throw std::domain_error("Gram matrix is singular to working precision");
        std::swap(a[p], a[c]);
        std::swap(inv[p], inv[c]);
        const Real piv = a[c][c];
        for (std::size_t j = 0; j < d; ++j) {
            a[c][j] /= piv;
            inv[c][j] /= piv;
        }
        for (std::size_t r = 0; r < d; ++r) {
            if (r == c) continue;
            const Real f = a[r][c];
            for (std::size_t j = 0; j < d; ++j) {
                a[r][j] -= f * a[c][j];
                inv[r][j] -= f * inv[c][j];
            }
        }
    }
    return inv;
}

Rational rational_det(RationalMatrix a) {
    const std::size_t d = a.size();
    Rational det = 1;
    for (std::size_t c = 0; c < d; ++c) {
        std::size_t p = c;
        while (p < d && a[p][c] == 0) ++p;
        if (p == d) return 0;
        if (p != c) {
            std::swap(a[p], a[c]);
            det = -det;
        }
        det *= a[c][c];
        for (std::size_t r = c + 1; r < d; ++r) {
            if (a[r][c] == 0) continue;
            const Rational f = a[r][c] / a[c][c];
            for (std::size_t j = c; j < d; ++j) a[r][j] -= f * a[c][j];
        }
    }
    return det;
}

Real real_det(RealMatrix a) {
    const std::size_t d = a.size();
    Real det = 1;
    for (std::size_t c = 0; c < d; ++c) {
        std::size_t p = c;
        for (std::size_t r = c + 1; r < d; ++r)
            if (abs(a[r][c]) > abs(a[p][c])) p = r;
        if (a[p][c] == 0) return 0;
        if (p != c) {
            std::swap(a[p], a[c]);
            det = -det;
        }
        det *= a[c][c];
        for (std::size_t r = c + 1; r < d; ++r) {
            const Real f = a[r][c] / a[c][c];
            for (std::size_t j = c; j < d; ++j) a[r][j] -= f * a[c][j];
        }
    }
    return det;
}

/// Fincke-Pohst over coefficient vectors x with x^T G x <= radius2, origin excluded.
/// The callback receives the coefficients and the floating-point norm.
template <typename Callback>
void enumerate_raw(const DoubleMatrix& gram, double radius2, std::int64_t max_points, Callback&& emit) {
    const int d = static_cast<int>(gram.size());
    // q_i and mu_{ij} from the Cholesky factor in double.
    std::vector<std::vector<double>> r(static_cast<std::size_t>(d), std::vector<double>(static_cast<std::size_t>(d), 0.0));
    for (int i = 0; i < d; ++i) {
        double diag = gram[i][i];
        for (int k = 0; k < i; ++k) diag -= r[k][i] * r[k][i];
        if (!(diag > 0)) throw std::domain_error("enumeration: Gram matrix not positive definite in double precision");
        r[i][i] = std::sqrt(diag);
        for (int j = i + 1; j < d; ++j) {
            double v = gram[i][j];
            for (int k = 0; k < i; ++k) v -= r[k][i] * r[k][j];
            r[i][j] = v / r[i][i];
        }
    }
    std::vector<double> q(static_cast<std::size_t>(d));
    std::vector<std::vector<double>> mu(static_cast<std::size_t>(d), std::vector<double>(static_cast<std::size_t>(d), 0.0));
    for (int i = 0; i < d; ++i) {
        q[i] = r[i][i] * r[i][i];
        for (int j = i + 1; j < d; ++j) mu[i][j] = r[i][j] / r[i][i];
    }
    const double bound = radius2 * (1 + 1e-9) + 1e-12;
    Coefficients x(static_cast<std::size_t>(d), 0);
    std::vector<double> remaining(static_cast<std::size_t>(d) + 1, 0.0);
    std::int64_t visited = 0;
    remaining[d] = bound;
    // Iterative depth-first walk from the last coordinate down to the first.
    std::vector<std::int64_t> upper(static_cast<std::size_t>(d), 0);
    std::vector<double> center(static_cast<std::size_t>(d), 0.0);
    auto open_level = [&](int i) {
        double c = 0;
        for (int j = i + 1; j < d; ++j) c -= mu[i][j] * static_cast<double>(x[j]);
        center[i] = c;
        const double half = std::sqrt(std::max(0.0, remaining[i + 1] / q[i]));
        x[i] = static_cast<std::int64_t>(std::ceil(c - half));
        upper[i] = static_cast<std::int64_t>(std::floor(c + half));
    };
    int i = d - 1;
    open_level(i);
    while (true) {
        if (x[i] > upper[i]) {
            ++i;
            if (i == d) break;
            ++x[i];
            continue;
        }
        const double t = static_cast<double>(x[i]) - center[i];
        remaining[i] = remaining[i + 1] - q[i] * t * t;
        if (remaining[i] < 0) {
            ++x[i];
            continue;
        }
        if (i == 0) {
            const double norm = bound - remaining[0];
            bool zero = true;
            for (auto v : x)
                if (v != 0) {
                    zero = false;
                    break;
                }
            if (!zero) {
                if (++visited > max_points)
                    throw std::runtime_error("enumeration budget of " + std::to_string(max_points) +
                                             " points exceeded at radius^2 = " + std::to_string(radius2));
                emit(x, norm);
            }
            ++x[i];
            continue;
        }
        --i;
        open_level(i);
    }
}

bool is_canonical(const Coefficients& x) {
    for (auto v : x)
        if (v != 0) return v > 0;
    return false;
}

BigInt integer_det(const std::vector<Coefficients>& rows) {
    RationalMatrix m;
    for (const auto& r : rows) {
        std::vector<Rational> row;
        for (auto v : r) row.emplace_back(v);
        m.push_back(std::move(row));
    }
    const Rational det = rational_det(m);
    return boost::multiprecision::numerator(det);
}

std::int64_t floor_numerator(const Real& radius2, const BigInt& den) {
    const Real scaled = radius2 * tracecoeff::to_real(den);
    return floor(scaled * (1 + ulp_scale(110))).convert_to<std::int64_t>();
}

}  // namespace

struct LatticeAccess {
    static std::optional<std::int64_t> numerator_norm(const Lattice& l, const Coefficients& x) {
        if (!l.exact_gram_) return std::nullopt;
        BigInt acc = 0;
        const std::size_t d = x.size();
        for (std::size_t i = 0; i < d; ++i) {
            if (x[i] == 0) continue;
            BigInt row = 0;
            for (std::size_t j = 0; j < d; ++j)
                if (x[j] != 0) row += l.gram_numerators_[i][j] * x[j];
            acc += row * x[i];
        }
        return acc.convert_to<std::int64_t>();
    }
    static const BigInt& denominator(const Lattice& l) { return l.gram_denominator_; }
};

Real euclidean_ball_volume(int d) {
    if (d < 0) throw std::invalid_argument("euclidean_ball_volume: negative dimension");
    Real v = (d % 2 == 0) ? Real(1) : Real(2);
    for (int k = (d % 2 == 0) ? 2 : 3; k <= d; k += 2) v *= 2 * pi() / k;
    return v;
}

Real unit_ball_volume(const Signature& sig) {
    return euclidean_ball_volume(sig.degree()) / pow(Real(2), sig.r2);
}

Real monte_carlo_ball_volume(const Signature& sig, std::int64_t samples, std::uint64_t seed) {
    if (samples <= 0) throw std::invalid_argument("monte_carlo_ball_volume: samples must be positive");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const int d = sig.degree();
    std::int64_t inside = 0;
    for (std::int64_t s = 0; s < samples; ++s) {
        double n2 = 0;
        for (int k = 0; k < d; ++k) {
            const double c = u(rng);
            n2 += (k < sig.r1 ? 1.0 : 2.0) * c * c;
        }
        if (n2 <= 1.0) ++inside;
    }
    return pow(Real(2), d) * Real(inside) / Real(samples);
}

Lattice Lattice::from_rational_basis(const Signature& sig, const RationalMatrix& rows) {
    Lattice l;
    l.space_ = MinkowskiSpace{sig};
    const int d = sig.degree();
    check_square(to_real_matrix(rows), d, "from_rational_basis");
    l.exact_basis_ = rows;
    l.basis_ = to_real_matrix(rows);
    RationalMatrix g(static_cast<std::size_t>(d), std::vector<Rational>(static_cast<std::size_t>(d), Rational(0)));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k) g[i][j] += (k < sig.r1 ? Rational(1) : Rational(2)) * rows[i][k] * rows[j][k];
    l.exact_gram_ = g;
    l.finish_construction();
    return l;
}

Lattice Lattice::from_real_basis(const Signature& sig, const RealMatrix& rows) {
    Lattice l;
    l.space_ = MinkowskiSpace{sig};
    const int d = sig.degree();
    check_square(rows, d, "from_real_basis");
    l.basis_ = rows;
    l.finish_construction();
    return l;
}

Lattice Lattice::from_basis_and_gram(const Signature& sig, const RealMatrix& rows, const RationalMatrix& gram) {
    Lattice l;
    l.space_ = MinkowskiSpace{sig};
    const int d = sig.degree();
    check_square(rows, d, "from_basis_and_gram");
    l.basis_ = rows;
    l.exact_gram_ = gram;
    l.finish_construction();
    // The coordinates must reproduce the exact Gram matrix.
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            Real v = 0;
            for (int k = 0; k < d; ++k) v += l.space_.weight(k) * rows[i][k] * rows[j][k];
            const Real& e = l.gram_[i][j];
            if (abs(v - e) > (abs(e) + 1) * ulp_scale(kWorkingBits - 20))
                throw std::invalid_argument("from_basis_and_gram: coordinates disagree with the Gram matrix");
        }
    return l;
}

Lattice Lattice::from_gram(const RationalMatrix& gram) {
    const int d = static_cast<int>(gram.size());
    const auto r = cholesky(to_real_matrix(gram));
    if (!r) throw std::invalid_argument("from_gram: Gram matrix is not positive definite");
    RealMatrix rows(static_cast<std::size_t>(d), std::vector<Real>(static_cast<std::size_t>(d), Real(0)));
    for (int i = 0; i < d; ++i)
        for (int k = 0; k < d; ++k) rows[i][k] = (*r)[k][i];
    return from_basis_and_gram(Signature{d, 0}, rows, gram);
}

void Lattice::finish_construction() {
    const int d = dim();
    if (exact_gram_) {
        gram_ = to_real_matrix(*exact_gram_);
        gram_denominator_ = 1;
        for (const auto& row : *exact_gram_)
            for (const auto& v : row)
                gram_denominator_ = boost::multiprecision::lcm(gram_denominator_, boost::multiprecision::denominator(v));
        gram_numerators_.assign(static_cast<std::size_t>(d), std::vector<BigInt>(static_cast<std::size_t>(d)));
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                const Rational scaled = (*exact_gram_)[i][j] * gram_denominator_;
                gram_numerators_[i][j] = boost::multiprecision::numerator(scaled);
            }
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                if ((*exact_gram_)[i][j] != (*exact_gram_)[j][i]) throw std::invalid_argument("Gram matrix is not symmetric");
        if (rational_det(*exact_gram_) <= 0) throw std::invalid_argument("lattice: Gram matrix is not positive definite");
    } else {
        gram_.assign(static_cast<std::size_t>(d), std::vector<Real>(static_cast<std::size_t>(d), Real(0)));
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                for (int k = 0; k < d; ++k) gram_[i][j] += space_.weight(k) * basis_[i][k] * basis_[j][k];
    }
    if (!cholesky(gram_)) throw std::invalid_argument("lattice: Gram matrix is not positive definite");
}

Real Lattice::det() const {
    if (exact_gram_) return sqrt(tracecoeff::to_real(rational_det(*exact_gram_)));
    return sqrt(real_det(gram_));
}

std::optional<Rational> Lattice::det_squared() const {
    if (!exact_gram_) return std::nullopt;
    return rational_det(*exact_gram_);
}

Real Lattice::norm2(const Coefficients& x) const {
    if (exact_gram_) return tracecoeff::to_real(*exact_norm2(x));
    Real acc = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j) acc += Real(x[i]) * Real(x[j]) * gram_[i][j];
    return acc;
}

std::optional<Rational> Lattice::exact_norm2(const Coefficients& x) const {
    if (!exact_gram_) return std::nullopt;
    BigInt acc = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == 0) continue;
        BigInt row = 0;
        for (std::size_t j = 0; j < x.size(); ++j)
            if (x[j] != 0) row += gram_numerators_[i][j] * x[j];
        acc += row * x[i];
    }
    return Rational(acc, gram_denominator_);
}

std::vector<Real> Lattice::vector_of(const Coefficients& x) const {
    std::vector<Real> v(static_cast<std::size_t>(dim()), Real(0));
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t k = 0; k < v.size(); ++k) v[k] += Real(x[i]) * basis_[i][k];
    return v;
}

std::string Lattice::to_json() const {
    nlohmann::ordered_json out;
    out["signature"] = {{"r1", space_.signature.r1}, {"r2", space_.signature.r2}};
    auto entry = [&](std::size_t i, std::size_t k) -> std::string {
        return exact_basis_ ? to_string((*exact_basis_)[i][k]) : to_decimal(basis_[i][k]);
    };
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        const auto r1 = static_cast<std::size_t>(space_.signature.r1);
        for (std::size_t k = 0; k < r1; ++k) row.push_back(entry(i, k));
        for (std::size_t k = r1; k + 1 < basis_[i].size(); k += 2) row.push_back({entry(i, k), entry(i, k + 1)});
        rows.push_back(row);
    }
    out["basis"] = rows;
    if (exact_gram_) {
        nlohmann::ordered_json g = nlohmann::ordered_json::array();
        for (const auto& r : *exact_gram_) {
            nlohmann::ordered_json row = nlohmann::ordered_json::array();
            for (const auto& v : r) row.push_back(to_string(v));
            g.push_back(row);
        }
        out["gram"] = g;
    }
    out["det"] = to_decimal(det(), 20);
    return out.dump();
}

Lattice dual(const Lattice& l) {
    const int d = l.dim();
    if (l.exact_gram_) {
        const RationalMatrix ginv = invert(*l.exact_gram_);
        if (l.exact_basis_) {
            RationalMatrix rows(static_cast<std::size_t>(d), std::vector<Rational>(static_cast<std::size_t>(d), Rational(0)));
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j)
                    for (int k = 0; k < d; ++k) rows[i][k] += ginv[i][j] * (*l.exact_basis_)[j][k];
            return Lattice::from_rational_basis(l.space_.signature, rows);
        }
        const RealMatrix gr = to_real_matrix(ginv);
        RealMatrix rows(static_cast<std::size_t>(d), std::vector<Real>(static_cast<std::size_t>(d), Real(0)));
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                for (int k = 0; k < d; ++k) rows[i][k] += gr[i][j] * l.basis_[j][k];
        return Lattice::from_basis_and_gram(l.space_.signature, rows, ginv);
    }
    const RealMatrix ginv = invert(l.gram_);
    RealMatrix rows(static_cast<std::size_t>(d), std::vector<Real>(static_cast<std::size_t>(d), Real(0)));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k) rows[i][k] += ginv[i][j] * l.basis_[j][k];
    return Lattice::from_real_basis(l.space_.signature, rows);
}

Lattice power(const Lattice& l, int k) {
    if (k < 1) throw std::invalid_argument("power: k must be >= 1");
    const int d = l.dim();
    const int n = d * k;
    if (l.exact_gram()) {
        RationalMatrix g(static_cast<std::size_t>(n), std::vector<Rational>(static_cast<std::size_t>(n), Rational(0)));
        for (int b = 0; b < k; ++b)
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) g[b * d + i][b * d + j] = (*l.exact_gram())[i][j];
        return Lattice::from_gram(g);
    }
    // Coordinates block by block in a real space of dimension dK with the induced weights folded in.
    RealMatrix rows(static_cast<std::size_t>(n), std::vector<Real>(static_cast<std::size_t>(n), Real(0)));
    for (int b = 0; b < k; ++b)
        for (int i = 0; i < d; ++i)
            for (int c = 0; c < d; ++c) rows[b * d + i][b * d + c] = l.basis()[i][c] * sqrt(l.space().weight(c));
    return Lattice::from_real_basis(Signature{n, 0}, rows);
}

std::vector<LatticePoint> enumerate_points(const Lattice& l, const Real& radius2, std::int64_t max_points) {
    std::vector<LatticePoint> out;
    const double r2 = radius2.convert_to<double>();
    const Real slack = abs(radius2) * ulp_scale(110);
    enumerate_raw(to_double(l.gram()), r2, max_points, [&](const Coefficients& x, double) {
        Real n = l.norm2(x);
        if (n <= radius2 + slack) out.push_back({x, std::move(n)});
    });
    return out;
}

bool within(const Lattice& l, const Coefficients& x, const Rational& radius2) {
    if (auto e = l.exact_norm2(x)) return *e <= radius2;
    return l.norm2(x) <= tracecoeff::to_real(radius2) * (1 + ulp_scale(110));
}

std::vector<Coefficients> lll_transform(const RealMatrix& gram) {
    const int d = static_cast<int>(gram.size());
    std::vector<std::vector<long double>> g0(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i)
        for (const auto& v : gram[i]) g0[i].push_back(v.convert_to<long double>());
    std::vector<Coefficients> u(static_cast<std::size_t>(d), Coefficients(static_cast<std::size_t>(d), 0));
    for (int i = 0; i < d; ++i) u[i][i] = 1;
    std::vector<std::vector<long double>> mu(static_cast<std::size_t>(d), std::vector<long double>(static_cast<std::size_t>(d), 0));
    std::vector<long double> bstar(static_cast<std::size_t>(d), 0);
    auto refresh = [&] {
        std::vector<std::vector<long double>> ug(static_cast<std::size_t>(d), std::vector<long double>(static_cast<std::size_t>(d), 0));
        for (int i = 0; i < d; ++i)
            for (int k = 0; k < d; ++k) {
                if (u[i][k] == 0) continue;
                for (int j = 0; j < d; ++j) ug[i][j] += static_cast<long double>(u[i][k]) * g0[k][j];
            }
        std::vector<std::vector<long double>> g(static_cast<std::size_t>(d), std::vector<long double>(static_cast<std::size_t>(d), 0));
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                for (int k = 0; k < d; ++k) g[i][j] += ug[i][k] * static_cast<long double>(u[j][k]);
        for (int i = 0; i < d; ++i) {
            for (int j = 0; j < i; ++j) {
                long double v = g[i][j];
                for (int l = 0; l < j; ++l) v -= mu[j][l] * mu[i][l] * bstar[l];
                mu[i][j] = v / bstar[j];
            }
            long double b = g[i][i];
            for (int l = 0; l < i; ++l) b -= mu[i][l] * mu[i][l] * bstar[l];
            bstar[i] = b;
        }
    };
    int k = 1;
    int guard = 0;
    refresh();
    while (k < d) {
        if (++guard > 100000) throw std::runtime_error("lll_transform: no convergence");
        for (int j = k - 1; j >= 0; --j) {
            const long double rr = std::round(mu[k][j]);
            if (rr == 0) continue;
            const auto r = static_cast<std::int64_t>(rr);
            for (int c = 0; c < d; ++c) u[k][c] -= r * u[j][c];
            refresh();
        }
        if (bstar[k] < (0.99L - mu[k][k - 1] * mu[k][k - 1]) * bstar[k - 1]) {
            std::swap(u[k], u[k - 1]);
            refresh();
            k = std::max(1, k - 1);
        } else {
            ++k;
        }
    }
    return u;
}

SuccessiveMinima successive_minima(const Lattice& l, std::int64_t max_points) {
    const int d = l.dim();
    if (d > 12) throw std::invalid_argument("successive_minima: dimension above enumeration budget");
    const auto u = lll_transform(l.gram());
    // Gram of the reduced basis and a radius that certainly contains d independent vectors.
    RealMatrix reduced(static_cast<std::size_t>(d), std::vector<Real>(static_cast<std::size_t>(d), Real(0)));
    Real radius2 = 0;
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j)
            for (int a = 0; a < d; ++a) {
                if (u[i][a] == 0) continue;
                for (int b = 0; b < d; ++b)
                    if (u[j][b] != 0) reduced[i][j] += Real(u[i][a]) * Real(u[j][b]) * l.gram()[a][b];
            }
        radius2 = std::max(radius2, l.norm2(u[i]));
    }
    struct Candidate {
        Coefficients x;
        Real norm2;
        std::optional<Rational> exact;
    };
    std::vector<Candidate> cands;
    const double r2 = radius2.convert_to<double>();
    enumerate_raw(to_double(reduced), r2, max_points, [&](const Coefficients& y, double) {
        Coefficients x(static_cast<std::size_t>(d), 0);
        for (int i = 0; i < d; ++i)
            if (y[i] != 0)
                for (int c = 0; c < d; ++c) x[c] += y[i] * u[i][c];
        if (!is_canonical(x)) return;
        Real n = l.norm2(x);
        if (n > radius2 * (1 + ulp_scale(100))) return;
        auto exact = l.exact_norm2(x);
        cands.push_back({std::move(x), std::move(n), std::move(exact)});
    });
    const Real tie = ulp_scale(90);
    std::sort(cands.begin(), cands.end(), [&](const Candidate& a, const Candidate& b) {
        if (a.exact && b.exact) {
            if (*a.exact != *b.exact) return *a.exact < *b.exact;
        } else if (abs(a.norm2 - b.norm2) > tie * (a.norm2 + b.norm2)) {
            return a.norm2 < b.norm2;
        }
        return a.x < b.x;
    });
    SuccessiveMinima out;
    std::vector<std::vector<Rational>> echelon;
    std::vector<int> pivots;
    std::vector<Rational> exact_squares;
    for (const auto& c : cands) {
        std::vector<Rational> v(c.x.begin(), c.x.end());
        for (std::size_t e = 0; e < echelon.size(); ++e) {
            const int p = pivots[e];
            if (v[p] == 0) continue;
            const Rational f = v[p] / echelon[e][p];
            for (int k = 0; k < d; ++k) v[k] -= f * echelon[e][k];
        }
        int p = -1;
        for (int k = 0; k < d; ++k)
            if (v[k] != 0) {
                p = k;
                break;
            }
        if (p < 0) continue;
        echelon.push_back(std::move(v));
        pivots.push_back(p);
        out.witnesses.push_back(c.x);
        out.squares.push_back(c.norm2);
        out.values.push_back(sqrt(c.norm2));
        if (c.exact) exact_squares.push_back(*c.exact);
        if (static_cast<int>(out.witnesses.size()) == d) break;
    }
    if (static_cast<int>(out.witnesses.size()) != d) throw std::logic_error("successive_minima: fewer than d independent vectors");
    if (l.is_exact()) out.exact_squares = std::move(exact_squares);
    return out;
}

MinkowskiSecondReport verify_minkowski_second(const Lattice& l) {
    return verify_minkowski_second(l, successive_minima(l));
}

MinkowskiSecondReport verify_minkowski_second(const Lattice& l, const SuccessiveMinima& m) {
    const int d = l.dim();
    const Real det = l.det();
    Real product = 1;
    for (const auto& v : m.values) product *= v;
    Real fact = 1;
    for (int i = 2; i <= d; ++i) fact *= i;
    const Real two_d = pow(Real(2), d);
    // Metric determinant paired with the metric unit-ball volume.
    const Real v_metric = euclidean_ball_volume(d);
    const Real v_lebesgue = unit_ball_volume(l.space().signature);
    const Real slack = ulp_scale(100);
    MinkowskiSecondReport r;
    r.product = product;
    r.lower = two_d * det / (fact * v_metric);
    r.upper = two_d * det / v_metric;
    r.literal_lower = two_d * det / (fact * v_lebesgue);
    r.literal_upper = two_d * det / v_lebesgue;
    r.holds = r.lower <= product * (1 + slack) && product <= r.upper * (1 + slack);
    r.literal_holds = r.literal_lower <= product * (1 + slack) && product <= r.literal_upper * (1 + slack);
    return r;
}

DualityPairingReport verify_duality_pairing(const Lattice& l) {
    return verify_duality_pairing(successive_minima(l), successive_minima(dual(l)));
}

DualityPairingReport verify_duality_pairing(const SuccessiveMinima& m, const SuccessiveMinima& dm) {
    const std::size_t d = m.values.size();
    DualityPairingReport r{true, {}};
    for (std::size_t i = 0; i < d; ++i) {
        r.products.push_back(m.values[i] * dm.values[d - 1 - i]);
        if (m.exact_squares && dm.exact_squares) {
            if ((*m.exact_squares)[i] * (*dm.exact_squares)[d - 1 - i] < 1) r.holds = false;
        } else if (r.products.back() < 1 - ulp_scale(90)) {
            r.holds = false;
        }
    }
    return r;
}

IndexBoundReport verify_index_bound(const Lattice& l, const SuccessiveMinima& m) {
    const int d = l.dim();
    IndexBoundReport r;
    r.index = abs(integer_det(m.witnesses));
    r.bound = pow(Real(2), d) / unit_ball_volume(l.space().signature);
    r.holds = r.index != 0 && tracecoeff::to_real(r.index) <= r.bound;
    return r;
}

std::int64_t count_points_direct(const Lattice& l, int k, const Real& r) {
    if (r <= 0) throw std::invalid_argument("count_points: r must be positive");
    const Lattice big = power(dual(l), k);
    if (big.dim() > 12) throw std::invalid_argument("count_points: dK exceeds the enumeration budget of 12");
    std::int64_t count = 1;
    const Real r2 = r * r;
    const Real slack = r2 * ulp_scale(110);
    const double r2d = r2.convert_to<double>();
    enumerate_raw(to_double(big.gram()), r2d, 100'000'000, [&](const Coefficients& x, double approx) {
        if (approx < r2d * (1 - 1e-9)) {
            ++count;
        } else if (big.norm2(x) <= r2 + slack) {
            ++count;
        }
    });
    return count;
}

namespace {

// Shell list of a lattice with exact Gram: norm numerator -> multiplicity, origin excluded.
std::map<std::int64_t, std::int64_t> shells(const Lattice& l, std::int64_t max_numerator) {
    std::map<std::int64_t, std::int64_t> out;
    const Real den = tracecoeff::to_real(LatticeAccess::denominator(l));
    const double r2 = (Real(max_numerator) / den).convert_to<double>();
    enumerate_raw(to_double(l.gram()), r2, 100'000'000, [&](const Coefficients& x, double) {
        const auto n = *LatticeAccess::numerator_norm(l, x);
        if (n <= max_numerator) ++out[n];
    });
    return out;
}

// Distribution of norm numerators of K-tuples, truncated at max_numerator.
std::map<std::int64_t, std::int64_t> tuple_distribution(const std::map<std::int64_t, std::int64_t>& shell, int k,
                                                        std::int64_t max_numerator) {
    std::map<std::int64_t, std::int64_t> dist{{0, 1}};
    std::map<std::int64_t, std::int64_t> single = shell;
    single[0] = 1;
    for (int step = 0; step < k; ++step) {
        std::map<std::int64_t, std::int64_t> next;
        for (const auto& [a, ca] : dist)
            for (const auto& [b, cb] : single) {
                if (a + b > max_numerator) break;
                next[a + b] += ca * cb;
            }
        dist = std::move(next);
    }
    return dist;
}

}  // namespace

PointCountReport count_points(const Lattice& l, int k, const Real& r) {
    if (k < 1) throw std::invalid_argument("count_points: K must be >= 1");
    if (r <= 0) throw std::invalid_argument("count_points: r must be positive");
    if (l.dim() * k > 12) throw std::invalid_argument("count_points: dK exceeds the enumeration budget of 12");
    PointCountReport rep{};
    const Lattice ld = dual(l);
    if (ld.is_exact()) {
        const std::int64_t max_num = floor_numerator(r * r, LatticeAccess::denominator(ld));
        const auto dist = tuple_distribution(shells(ld, max_num), k, max_num);
        rep.count = 0;
        for (const auto& [n, c] : dist) rep.count += c;
    } else {
        rep.count = count_points_direct(l, k, r);
    }
    const auto m = successive_minima(l);
    const auto dm = successive_minima(ld);
    rep.lambda_d = m.values.back();
    rep.lambda_1_dual = dm.values.front();
    rep.below_threshold = r * rep.lambda_d < 1;
    if (rep.below_threshold) {
        rep.bound = 1;
        rep.holds = rep.count == 1;
    } else {
        rep.bound = pow(3 * r * rep.lambda_d, l.dim() * k);
        rep.holds = Real(rep.count) <= rep.bound;
    }
    return rep;
}

DualSumReport dual_sum(const Lattice& l, int k, const Real& t, const Real& radius) {
    if (k < 1) throw std::invalid_argument("dual_sum: K must be >= 1");
    if (t < Real(1.01)) throw std::invalid_argument("dual_sum: t must be >= 1.01");
    if (radius <= 0) throw std::invalid_argument("dual_sum: radius must be positive");
    const int dk = l.dim() * k;
    const Real m = Real(dk) + t;
    DualSumReport rep{};
    const Lattice ld = dual(l);
    if (ld.is_exact()) {
        const BigInt& den_int = LatticeAccess::denominator(ld);
        const Real den = tracecoeff::to_real(den_int);
        const std::int64_t max_num = floor_numerator(radius * radius, den_int);
        const auto dist = tuple_distribution(shells(ld, max_num), k, max_num);
        for (const auto& [n, c] : dist) {
            if (n == 0) continue;
            rep.partial += Real(c) * pow(Real(n) / den, -m / 2);
        }
    } else {
        const Lattice big = power(ld, k);
        for (const auto& p : enumerate_points(big, radius * radius, 100'000'000)) rep.partial += pow(p.norm2, -m / 2);
    }
    const Real mu = successive_minima(l).values.back();
    const int one[1] = {1};
    const Real zeta_t = periodic_dirichlet_series(std::span<const int>(one, 1), t, 0, 100)[0].value;
    rep.rhs = pow(Real(6), dk) * zeta_t * pow(mu, m);
    // Shells k/mu < ||X|| <= (k+1)/mu for k >= k0 hold at most (3(k+1))^{dK} points each.
    const Real k0_real = floor(radius * mu);
    if (k0_real < 1) {
        rep.tail_bound = std::numeric_limits<Real>::infinity();
        rep.conclusive = false;
        return rep;
    }
    const auto k0 = k0_real.convert_to<std::int64_t>();
    const std::int64_t k1 = k0 + 4000;
    Real tail = 0;
    for (std::int64_t j = k0; j <= k1; ++j) tail += pow(Real(j + 1), dk) * pow(Real(j), -m);
    // Remainder: ((j+1)/j)^{dK} <= ((k1+1)/k1)^{dK}, sum_{j>k1} j^{-t} <= k1^{1-t}/(t-1).
    tail += pow(Real(k1 + 1) / Real(k1), dk) * pow(Real(k1), 1 - t) / (t - 1);
    rep.tail_bound = pow(mu, m) * pow(Real(3), dk) * tail;
    rep.conclusive = rep.partial + rep.tail_bound <= rep.rhs;
    return rep;
}

QuadraticRing::QuadraticRing(std::int64_t m) : radicand(m) {
    if (((m % 4) + 4) % 4 == 1) {
        trace = 1;
        norm = (1 - m) / 4;
    } else {
        trace = 0;
        norm = -m;
    }
}

QuadElement QuadraticRing::mul(const QuadElement& a, const QuadElement& b) const {
    // omega^2 = T omega - N
    const Rational yy = a.y * b.y;
    return {a.x * b.x - Rational(norm) * yy, a.x * b.y + a.y * b.x + Rational(trace) * yy};
}

QuadElement QuadraticRing::conj(const QuadElement& a) const { return {a.x + a.y * trace, -a.y}; }

Rational QuadraticRing::tr(const QuadElement& a) const { return 2 * a.x + a.y * trace; }

Rational QuadraticRing::nm(const QuadElement& a) const {
    return a.x * a.x + a.x * a.y * trace + a.y * a.y * norm;
}

QuadElement IdealLattice::element(const Coefficients& c) const {
    const Rational& s = ideal.content;
    return {s * (Rational(c[0]) * ideal.a + Rational(c[1]) * ideal.b), s * Rational(c[1])};
}

namespace {

void check_quadratic(const NumberField& f, const char* what) {
    if (!f.is_quadratic()) throw std::invalid_argument(std::string(what) + ": field must be quadratic");
}

std::int64_t mod(std::int64_t a, std::int64_t m) { return ((a % m) + m) % m; }

}  // namespace

IdealLattice ideal_lattice(const NumberField& f, const IdealSpec& ideal) {
    check_quadratic(f, "ideal_lattice");
    if (ideal.a < 1 || ideal.b < 0 || ideal.b >= ideal.a || ideal.content <= 0)
        throw std::invalid_argument("ideal_lattice: need a >= 1, 0 <= b < a, content > 0");
    const QuadraticRing ring(f.radicand);
    const std::int64_t nb = ideal.b * ideal.b + ideal.b * ring.trace + ring.norm;
    if (nb % ideal.a != 0)
        throw std::invalid_argument("ideal_lattice: [" + std::to_string(ideal.a) + ", " + std::to_string(ideal.b) +
                                    " + w] is not an ideal of the maximal order");
    const QuadElement basis[2] = {{ideal.content * ideal.a, 0}, {ideal.content * ideal.b, ideal.content}};
    RationalMatrix gram(2, std::vector<Rational>(2));
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const QuadElement other = f.disc < 0 ? ring.conj(basis[j]) : basis[j];
            gram[i][j] = ring.tr(ring.mul(basis[i], other));
        }
    // omega = (T + sqrt D)/2 in each embedding.
    const Real sqrt_abs = sqrt(Real(f.abs_disc()));
    RealMatrix rows(2, std::vector<Real>(2));
    for (int i = 0; i < 2; ++i) {
        const Real x = to_real(basis[i].x);
        const Real y = to_real(basis[i].y);
        if (f.disc < 0) {
            rows[i][0] = x + y * Real(ring.trace) / 2;
            rows[i][1] = y * sqrt_abs / 2;
        } else {
            rows[i][0] = x + y * (Real(ring.trace) + sqrt_abs) / 2;
            rows[i][1] = x + y * (Real(ring.trace) - sqrt_abs) / 2;
        }
    }
    IdealLattice out{f, ideal, ideal.content * ideal.content * ideal.a,
                     Lattice::from_basis_and_gram(f.signature, rows, gram)};
    if (*out.embedded.det_squared() != Rational(f.abs_disc()) * out.norm * out.norm)
        throw std::logic_error("ideal_lattice: det^2 differs from D_F N^2");
    return out;
}

IdealLattice inverse_ideal_lattice(const IdealLattice& l) {
    const QuadraticRing ring(l.field.radicand);
    IdealSpec inv;
    inv.a = l.ideal.a;
    inv.b = mod(-l.ideal.b - ring.trace, l.ideal.a);
    inv.content = 1 / (l.ideal.content * l.ideal.a);
    return ideal_lattice(l.field, inv);
}

IdealSpec prime_ideal(const NumberField& f, std::int64_t p, int index) {
    check_quadratic(f, "prime_ideal");
    const auto places = places_above(f, p);
    if (index < 0 || index >= static_cast<int>(places.size()))
        throw std::invalid_argument("prime_ideal: no place with index " + std::to_string(index) + " above " + std::to_string(p));
    if (places[0].q == p * p) return IdealSpec{Rational(p), 1, 0};
    const QuadraticRing ring(f.radicand);
    std::vector<std::int64_t> roots;
    for (std::int64_t b = 0; b < p; ++b)
        if (mod(b * b + b * ring.trace + ring.norm, p) == 0) roots.push_back(b);
    return IdealSpec{Rational(1), p, roots.at(static_cast<std::size_t>(index))};
}

std::vector<IdealSpec> ideals_of_norm(const NumberField& f, std::int64_t n) {
    check_quadratic(f, "ideals_of_norm");
    if (n < 1) throw std::invalid_argument("ideals_of_norm: n must be positive");
    const QuadraticRing ring(f.radicand);
    std::vector<IdealSpec> out;
    for (std::int64_t c = 1; c * c <= n; ++c) {
        if (n % (c * c) != 0) continue;
        const std::int64_t a = n / (c * c);
        for (std::int64_t b = 0; b < a; ++b)
            if (mod(b * b + b * ring.trace + ring.norm, a) == 0) out.push_back({Rational(c), a, b});
    }
    return out;
}

QuadraticForm ideal_form(const NumberField& f, const IdealSpec& ideal) {
    if (!f.is_imaginary_quadratic()) throw std::invalid_argument("ideal_form: field must be imaginary quadratic");
    const QuadraticRing ring(f.radicand);
    const std::int64_t nb = ideal.b * ideal.b + ideal.b * ring.trace + ring.norm;
    if (nb % ideal.a != 0) throw std::invalid_argument("ideal_form: not an ideal");
    return reduce_form({ideal.a, 2 * ideal.b + ring.trace, nb / ideal.a});
}

std::vector<IdealLattice> minkowski_representatives(const NumberField& f) {
    if (!f.is_imaginary_quadratic()) throw std::invalid_argument("minkowski_representatives: field must be imaginary quadratic");
    const auto bound = floor(f.minkowski_constant()).convert_to<std::int64_t>();
    const QuadraticRing ring(f.radicand);
    std::vector<QuadraticForm> seen;
    std::vector<IdealLattice> out;
    for (std::int64_t a = 1; a <= std::max<std::int64_t>(bound, 1); ++a)
        for (std::int64_t b = 0; b < a; ++b) {
            if (mod(b * b + b * ring.trace + ring.norm, a) != 0) continue;
            const IdealSpec spec{Rational(1), a, b};
            const QuadraticForm form = ideal_form(f, spec);
            if (std::find(seen.begin(), seen.end(), form) != seen.end()) continue;
            seen.push_back(form);
            out.push_back(ideal_lattice(f, spec));
        }
    if (static_cast<std::int64_t>(out.size()) != f.class_number)
        throw std::logic_error("minkowski_representatives: found " + std::to_string(out.size()) +
                               " classes below the Minkowski bound, expected " + std::to_string(f.class_number));
    return out;
}

AmGmReport verify_am_gm(const IdealLattice& l, const Real& radius2) {
    const QuadraticRing ring(l.field.radicand);
    AmGmReport r{true, 0, Real(0)};
    bool first = true;
    for (const auto& p : enumerate_points(l.embedded, radius2)) {
        const Rational n2 = *l.embedded.exact_norm2(p.coeffs);
        const Rational nm = abs(ring.nm(l.element(p.coeffs)));
        ++r.checked;
        if (n2 < 2 * nm || nm < l.norm) r.holds = false;
        if (first || p.norm2 < r.min_lambda1 * r.min_lambda1) {
            r.min_lambda1 = sqrt(p.norm2);
            first = false;
        }
    }
    if (l.norm >= 1 && !first && r.min_lambda1 < 1) r.holds = false;
    return r;
}

FundamentalDomainReport fundamental_domain_radii(const NumberField& f, int n, std::int64_t samples, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("fundamental_domain_radii: n must be >= 1");
    const int d = f.degree();
    const Real v = unit_ball_volume(f.signature);
    const Real delta = f.delta();
    FundamentalDomainReport rep{};
    rep.radius = pow(Real(2), 2 * d) * delta / (v * v);
    rep.volume_m = pow(residue(f), n);
    const int pairs = n * (n - 1) / 2;
    rep.volume_n_bound = pow(delta, pairs * d);
    // vol(F^0) <= v * radius^d, one factor per entry above the diagonal.
    rep.box_constant = pow(v * pow(rep.radius / delta, d), pairs);
    rep.cover_holds = true;
    rep.samples = 0;
    if (!(f.is_rational() || f.is_quadratic())) return rep;

    const Lattice ring_lattice = f.is_rational()
                                     ? Lattice::from_rational_basis(Signature{1, 0}, {{Rational(1)}})
                                     : ideal_lattice(f, IdealSpec{}).embedded;
    const RealMatrix& b = ring_lattice.basis();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const MinkowskiSpace& space = ring_lattice.space();
    Real worst = 0;
    // Points of a fundamental parallelotope; the nearest corner is within reach of O_F.
    for (std::int64_t s = 0; s < samples; ++s) {
        std::vector<Real> t(static_cast<std::size_t>(d));
        for (auto& ti : t) ti = unit(rng);
        Real best = -1;
        for (int mask = 0; mask < (1 << d); ++mask) {
            Real n2 = 0;
            for (int c = 0; c < d; ++c) {
                Real coord = 0;
                for (int i = 0; i < d; ++i) coord += (t[i] - ((mask >> i) & 1)) * b[i][c];
                n2 += space.weight(c) * coord * coord;
            }
            if (best < 0 || n2 < best) best = n2;
        }
        worst = std::max(worst, sqrt(best));
    }
    rep.samples = samples;
    rep.covering_radius_estimate = worst;
    rep.cover_holds = worst <= rep.radius;
    return rep;
}

}  // namespace tracecoeff
