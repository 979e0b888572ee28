#pragma once

#include "mwg/vector.hpp"

#include <span>
#include <vector>

namespace mwg {

using RationalVector = std::vector<Rational>;
using RationalMatrix = std::vector<RationalVector>;

RationalVector to_rational(const WeightVector& v);

// Row-reduces `m` in place to reduced row echelon form (pivots 1, zero
// rows dropped) and returns the pivot column of each remaining row.
std::vector<std::size_t> rref(RationalMatrix& m);

std::size_t rank(std::span<const WeightVector> vectors);

// A basis of {x in Q^cols : m x = 0}, one free variable per vector.
RationalMatrix kernel_basis(RationalMatrix m, std::size_t cols);

// The unique primitive integer multiple of a nonzero rational vector with
// the same direction.
WeightVector primitive_integer(const RationalVector& v);

// Least common multiple of the denominators.
BigInt denominator_lcm(const RationalVector& v);

}  // namespace mwg
