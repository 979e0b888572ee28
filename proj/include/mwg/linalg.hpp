#pragma once

#include "mwg/halfspace.hpp"
#include "mwg/rational.hpp"

#include <optional>
#include <variant>
#include <vector>

namespace mwg {

// Distinct integer columns of norm <= M inside an M-generated ambient
// subspace.
class ColumnSystem {
 public:
  ColumnSystem(std::vector<WeightVector> columns, Subspace ambient, BigInt m);
  // Ambient defaults to the span of the columns.
  ColumnSystem(std::vector<WeightVector> columns, BigInt m);

  const std::vector<WeightVector>& columns() const { return columns_; }
  const Subspace& ambient() const { return ambient_; }
  const BigInt& m() const { return m_; }
  std::size_t rank() const { return rank_; }

 private:
  std::vector<WeightVector> columns_;
  Subspace ambient_;
  BigInt m_;
  std::size_t rank_ = 0;
};

// (2(M+1))^{(r+2)^2}
BigInt bound_S(const BigInt& m, std::size_t r);

// Some rational point of {A y = b, y >= 0}, or none. Exact two-phase
// simplex with Bland's rule, minimizing the sum of y.
std::optional<RationalVector> nonnegative_solution(const RationalMatrix& a, const RationalVector& b);

// Positive integers x with sum_i x_i a_i = 0 and max x_i <= bound_S(M, r),
// or none when no positive rational solution exists. Throws Falsification
// when a rational solution exists but no small one is found.
std::optional<std::vector<BigInt>> positive_kernel_solution(const ColumnSystem& s);

struct PositiveCombination {
  std::vector<BigInt> coefficients;
};

// The closure of `half_space` contains every column.
struct ClosedHalfSpace {
  OpenHalfSpace half_space;
};

using Alternative = std::variant<PositiveCombination, ClosedHalfSpace>;

// Positive combination when one exists, otherwise the <-first M-generated
// closed half-space of the ambient containing all columns. The returned
// witness is rechecked; a failed check or a missing branch throws
// Falsification.
Alternative alternatives(const ColumnSystem& s);

}  // namespace mwg
