#include "tracecoeff/real.hpp"

#include <stdexcept>

namespace tracecoeff {

namespace {

// 50-digit literals; both constants are universal and taken as data.
constexpr const char* kEulerGamma = "0.57721566490153286060651209008240243104215933593992";
constexpr const char* kStieltjes1 = "-0.072815845483676724860586375874901319137736338334338";

}  // namespace

const Real& pi() {
    static const Real value = boost::multiprecision::acos(Real(-1));
    return value;
}

const Real& euler_gamma() {
    static const Real value(kEulerGamma);
    return value;
}

const Real& stieltjes_gamma1() {
    static const Real value(kStieltjes1);
    return value;
}

Real to_real(const Rational& q) {
    return to_real(boost::multiprecision::numerator(q)) /
           to_real(boost::multiprecision::denominator(q));
}

Real to_real(const BigInt& n) { return Real(n.str()); }

Real parse_real(const std::string& decimal) {
    if (decimal.empty()) throw std::invalid_argument("empty decimal string");
    try {
        return Real(decimal);
    } catch (const std::exception&) {
        throw std::invalid_argument("not a decimal number: '" + decimal + "'");
    }
}

std::string to_decimal(const Real& x) {
    return x.str(std::numeric_limits<Real>::max_digits10, std::ios_base::scientific);
}

std::string to_decimal(const Real& x, int digits) { return x.str(digits); }

std::string to_string(const Rational& q) {
    auto den = boost::multiprecision::denominator(q);
    if (den == 1) return boost::multiprecision::numerator(q).str();
    return boost::multiprecision::numerator(q).str() + "/" + den.str();
}

Rational parse_rational(const std::string& text) {
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational(BigInt(text));
        BigInt num(text.substr(0, slash));
        BigInt den(text.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Rational(num, den);
    } catch (const std::runtime_error&) {
        throw std::invalid_argument("not a rational: '" + text + "'");
    }
}

Real ulp_scale(int bits) { return boost::multiprecision::ldexp(Real(1), -bits); }

}  // namespace tracecoeff
