#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace polypack {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Exact parse of "3", "-7/2", "0.125" or "1e-3"-free decimal strings.
// Throws std::invalid_argument on anything else.
Rational parse_rational(std::string_view text);

// floor(r + 1/2); ties round towards +infinity.
BigInt round_half_up(const Rational& r);

BigInt floor_of(const Rational& r);

// "num/den" (or "num" when integral), used for exact values in JSON output.
std::string to_exact_string(const Rational& r);

// Fixed-point rendering with `places` decimals, rounding half up.
std::string to_fixed_string(const Rational& r, int places);

double to_double(const Rational& r);

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
    return Rational(BigInt(num), BigInt(den));
}

}  // namespace polypack
