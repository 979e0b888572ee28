#include "mwg/rational.hpp"

#include <boost/multiprecision/integer.hpp>

namespace mwg {

RationalVector to_rational(const WeightVector& v) {
  RationalVector r;
  r.reserve(v.dim());
  for (const auto& e : v.entries()) r.emplace_back(e);
  return r;
}

std::vector<std::size_t> rref(RationalMatrix& m) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  const std::size_t cols = m.front().size();
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
    std::size_t sel = row;
    while (sel < m.size() && m[sel][col] == 0) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[row], m[sel]);
    Rational inv = 1 / m[row][col];
    for (auto& x : m[row]) x *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][col] == 0) continue;
      Rational f = m[r][col];
      for (std::size_t c = col; c < cols; ++c) m[r][c] -= f * m[row][c];
    }
    pivots.push_back(col);
    ++row;
  }
  m.resize(row);
  return pivots;
}

std::size_t rank(std::span<const WeightVector> vectors) {
  RationalMatrix m;
  for (const auto& v : vectors) m.push_back(to_rational(v));
  return rref(m).size();
}

RationalMatrix kernel_basis(RationalMatrix m, std::size_t cols) {
  auto pivots = rref(m);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  RationalMatrix basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    RationalVector x(cols, Rational(0));
    x[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = -m[r][free];
    basis.push_back(std::move(x));
  }
  return basis;
}

BigInt denominator_lcm(const RationalVector& v) {
  BigInt l = 1;
  for (const auto& x : v) l = boost::multiprecision::lcm(l, BigInt(boost::multiprecision::denominator(x)));
  return l;
}

WeightVector primitive_integer(const RationalVector& v) {
  BigInt l = denominator_lcm(v);
  std::vector<BigInt> entries;
  entries.reserve(v.size());
  for (const auto& x : v)
    entries.push_back(BigInt(boost::multiprecision::numerator(x)) * (l / BigInt(boost::multiprecision::denominator(x))));
  return primitive(WeightVector(std::move(entries)));
}

}  // namespace mwg
