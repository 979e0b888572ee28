#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace mwg {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

std::string to_string(const BigInt& value);
std::string to_string(const Rational& value);

// Parses an optionally signed decimal integer. Throws InputError.
BigInt parse_bigint(std::string_view text);

BigInt ipow(const BigInt& base, unsigned long exponent);

BigInt abs(const BigInt& value);

// Number of decimal digits of |value| (1 for zero).
std::size_t decimal_digits(const BigInt& value);

}  // namespace mwg
