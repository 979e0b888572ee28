#include "mwg/vector.hpp"

#include <boost/multiprecision/integer.hpp>

#include <climits>
#include <functional>

namespace mwg {

WeightVector::WeightVector(std::initializer_list<long long> entries) {
  entries_.reserve(entries.size());
  for (long long e : entries) entries_.emplace_back(e);
}

WeightVector WeightVector::unit(std::size_t dimension, std::size_t axis, int sign) {
  WeightVector v(dimension);
  v.entries_.at(axis) = sign;
  return v;
}

bool WeightVector::is_zero() const {
  for (const auto& e : entries_)
    if (e != 0) return false;
  return true;
}

WeightVector& WeightVector::operator+=(const WeightVector& other) {
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
  return *this;
}

WeightVector& WeightVector::operator-=(const WeightVector& other) {
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= other.entries_[i];
  return *this;
}

WeightVector& WeightVector::operator*=(const BigInt& factor) {
  for (auto& e : entries_) e *= factor;
  return *this;
}

WeightVector WeightVector::operator-() const {
  WeightVector r(*this);
  for (auto& e : r.entries_) e = -e;
  return r;
}

bool operator<(const WeightVector& a, const WeightVector& b) {
  return std::lexicographical_compare(a.entries_.begin(), a.entries_.end(), b.entries_.begin(),
                                      b.entries_.end());
}

BigInt norm(const WeightVector& v) {
  BigInt best = 0;
  for (const auto& e : v.entries()) {
    BigInt a = abs(e);
    if (a > best) best = a;
  }
  return best;
}

BigInt dot(const WeightVector& a, const WeightVector& b) {
  BigInt s = 0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s;
}

bool dominates(const WeightVector& a, const WeightVector& b) {
  for (std::size_t i = 0; i < a.dim(); ++i)
    if (a[i] < b[i]) return false;
  return true;
}

WeightVector primitive(const WeightVector& v) {
  BigInt g = 0;
  for (const auto& e : v.entries()) g = boost::multiprecision::gcd(g, abs(e));
  if (g <= 1) return v;
  WeightVector r(v);
  for (std::size_t i = 0; i < r.dim(); ++i) r[i] /= g;
  return r;
}

std::string to_string(const WeightVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.dim(); ++i) {
    if (i) s += ',';
    s += v[i].str();
  }
  return s + ")";
}

std::size_t WeightVectorHash::operator()(const WeightVector& v) const {
  std::size_t h = 0x9e3779b97f4a7c15ULL;
  for (const auto& e : v.entries()) {
    std::size_t x = (e >= LLONG_MIN && e <= LLONG_MAX)
                        ? std::hash<long long>{}(e.convert_to<long long>())
                        : std::hash<std::string>{}(e.str());
    h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

}  // namespace mwg
