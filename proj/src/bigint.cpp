#include "mwg/bigint.hpp"

#include "mwg/errors.hpp"

namespace mwg {

std::string to_string(const BigInt& value) { return value.str(); }

std::string to_string(const Rational& value) {
  auto num = boost::multiprecision::numerator(value);
  auto den = boost::multiprecision::denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

BigInt parse_bigint(std::string_view text) {
  std::string_view digits = text;
  if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
  if (digits.empty()) throw InputError("empty integer literal");
  for (char c : digits) {
    if (c < '0' || c > '9') throw InputError("invalid integer literal '" + std::string(text) + "'");
  }
  BigInt value{std::string(digits)};
  return text.front() == '-' ? BigInt(-value) : value;
}

BigInt ipow(const BigInt& base, unsigned long exponent) {
  return boost::multiprecision::pow(base, static_cast<unsigned>(exponent));
}

BigInt abs(const BigInt& value) { return value < 0 ? BigInt(-value) : value; }

std::size_t decimal_digits(const BigInt& value) { return abs(value).str().size(); }

}  // namespace mwg
