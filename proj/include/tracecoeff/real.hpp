#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <cstdint>
#include <string>

namespace tracecoeff {

// Working real type: MPFR with 40 decimal digits (134-bit mantissa).
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<40>,
                                           boost::multiprecision::et_off>;
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Mantissa bits carried by Real; the ceiling for any requested precision.
inline constexpr int kWorkingBits = std::numeric_limits<Real>::digits;
inline constexpr int kDefaultPrecisionBits = 128;

/// A real value together with an absolute error estimate.
struct Approx {
    Real value;
    Real error;
};

const Real& pi();
const Real& euler_gamma();
/// First Stieltjes constant gamma_1 (negative).
const Real& stieltjes_gamma1();

Real to_real(const Rational& q);
Real to_real(const BigInt& n);
Real parse_real(const std::string& decimal);

/// Round-trippable decimal rendering (enough digits to recover the value exactly).
std::string to_decimal(const Real& x);
/// Short rendering with `digits` significant digits.
std::string to_decimal(const Real& x, int digits);

/// Rationals serialize as "num/den" (or "num" when den == 1).
std::string to_string(const Rational& q);
Rational parse_rational(const std::string& text);

/// 2^-bits as a Real.
Real ulp_scale(int bits);

}  // namespace tracecoeff
