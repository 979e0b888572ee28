#pragma once

#include "mwg/bigint.hpp"

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace mwg {

// An integer vector of Z^d. Used for edge weights, energy levels and
// cycle weights alike.
class WeightVector {
 public:
  WeightVector() = default;
  explicit WeightVector(std::size_t dimension) : entries_(dimension) {}
  explicit WeightVector(std::vector<BigInt> entries) : entries_(std::move(entries)) {}
  WeightVector(std::initializer_list<long long> entries);

  static WeightVector unit(std::size_t dimension, std::size_t axis, int sign = 1);

  std::size_t dim() const { return entries_.size(); }
  const BigInt& operator[](std::size_t i) const { return entries_[i]; }
  BigInt& operator[](std::size_t i) { return entries_[i]; }
  const std::vector<BigInt>& entries() const { return entries_; }

  bool is_zero() const;

  WeightVector& operator+=(const WeightVector& other);
  WeightVector& operator-=(const WeightVector& other);
  WeightVector& operator*=(const BigInt& factor);

  friend WeightVector operator+(WeightVector a, const WeightVector& b) { return a += b; }
  friend WeightVector operator-(WeightVector a, const WeightVector& b) { return a -= b; }
  friend WeightVector operator*(WeightVector a, const BigInt& k) { return a *= k; }
  friend WeightVector operator*(const BigInt& k, WeightVector a) { return a *= k; }
  WeightVector operator-() const;

  friend bool operator==(const WeightVector& a, const WeightVector& b) {
    return a.entries_ == b.entries_;
  }
  friend bool operator!=(const WeightVector& a, const WeightVector& b) { return !(a == b); }
  // Lexicographic; used for canonical orderings only.
  friend bool operator<(const WeightVector& a, const WeightVector& b);

 private:
  std::vector<BigInt> entries_;
};

// max_i |v(i)|
BigInt norm(const WeightVector& v);

BigInt dot(const WeightVector& a, const WeightVector& b);

// a >= b in the product order.
bool dominates(const WeightVector& a, const WeightVector& b);

// Divides by the gcd of the entries; the zero vector is returned unchanged.
WeightVector primitive(const WeightVector& v);

// "(1,-2,0)"
std::string to_string(const WeightVector& v);

struct WeightVectorHash {
  std::size_t operator()(const WeightVector& v) const;
};

}  // namespace mwg
