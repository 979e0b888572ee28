#include "mwg/linalg.hpp"

#include "mwg/errors.hpp"

#include <boost/multiprecision/integer.hpp>

#include <algorithm>
#include <set>

namespace mwg {

ColumnSystem::ColumnSystem(std::vector<WeightVector> columns, Subspace ambient, BigInt m)
    : columns_(std::move(columns)), ambient_(std::move(ambient)), m_(std::move(m)) {
  if (m_ < 1) throw InputError("column system: M must be positive");
  std::set<WeightVector> seen;
  for (const auto& c : columns_) {
    if (c.dim() != ambient_.ambient_dim()) throw InputError("column of the wrong dimension");
    if (!seen.insert(c).second) throw InputError("duplicate column " + to_string(c));
    if (norm(c) > m_) throw InputError("column " + to_string(c) + " has norm above M");
    if (!ambient_.contains(c)) throw InputError("column " + to_string(c) + " outside the ambient");
  }
  rank_ = mwg::rank(columns_);
}

ColumnSystem::ColumnSystem(std::vector<WeightVector> columns, BigInt m)
    : ColumnSystem(columns,
                   Subspace::span(columns.empty() ? 1 : columns.front().dim(), columns),
                   std::move(m)) {}

BigInt bound_S(const BigInt& m, std::size_t r) {
  if (m < 1 || r < 1) throw InputError("bound_S expects positive arguments");
  return ipow(2 * (m + 1), static_cast<unsigned long>((r + 2) * (r + 2)));
}

namespace {

struct Tableau {
  RationalMatrix rows;          // constraint rows, last entry is the rhs
  RationalVector cost;          // reduced costs, last entry is -objective
  std::vector<std::size_t> basis;

  std::size_t width() const { return cost.size() - 1; }

  void pivot(std::size_t r, std::size_t c) {
    Rational inv = 1 / rows[r][c];
    for (auto& x : rows[r]) x *= inv;
    auto eliminate = [&](RationalVector& row) {
      if (row[c] == 0) return;
      Rational f = row[c];
      for (std::size_t j = 0; j < row.size(); ++j) row[j] -= f * rows[r][j];
    };
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (i != r) eliminate(rows[i]);
    eliminate(cost);
    basis[r] = c;
  }

  // Bland's rule over columns [0, limit). False if unbounded.
  bool optimize(std::size_t limit) {
    while (true) {
      std::size_t enter = limit;
      for (std::size_t j = 0; j < limit; ++j)
        if (cost[j] < 0) {
          enter = j;
          break;
        }
      if (enter == limit) return true;
      std::size_t leave = rows.size();
      Rational best;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i][enter] <= 0) continue;
        Rational ratio = rows[i].back() / rows[i][enter];
        if (leave == rows.size() || ratio < best ||
            (ratio == best && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == rows.size()) return false;
      pivot(leave, enter);
    }
  }
};

}  // namespace

std::optional<RationalVector> nonnegative_solution(const RationalMatrix& a, const RationalVector& b) {
  const std::size_t m = a.size();
  if (b.size() != m) throw InputError("nonnegative_solution: shape mismatch");
  const std::size_t n = m ? a.front().size() : 0;
  if (m == 0) return RationalVector(n, Rational(0));

  Tableau t;
  t.rows.assign(m, RationalVector(n + m + 1, Rational(0)));
  for (std::size_t i = 0; i < m; ++i) {
    const bool flip = b[i] < 0;
    for (std::size_t j = 0; j < n; ++j) t.rows[i][j] = flip ? Rational(-a[i][j]) : a[i][j];
    t.rows[i][n + i] = 1;
    t.rows[i].back() = flip ? Rational(-b[i]) : b[i];
    t.basis.push_back(n + i);
  }
  // Phase 1: minimize the sum of artificials.
  t.cost.assign(n + m + 1, Rational(0));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j <= n + m; ++j)
      if (j < n || j == n + m) t.cost[j] -= t.rows[i][j];
  t.optimize(n + m);
  if (t.cost.back() != 0) return std::nullopt;

  // Drive artificials out of the basis; rows where that fails are redundant.
  for (std::size_t i = 0; i < t.rows.size();) {
    if (t.basis[i] < n) {
      ++i;
      continue;
    }
    std::size_t j = 0;
    while (j < n && t.rows[i][j] == 0) ++j;
    if (j < n) {
      t.pivot(i, j);
      ++i;
    } else {
      t.rows.erase(t.rows.begin() + static_cast<std::ptrdiff_t>(i));
      t.basis.erase(t.basis.begin() + static_cast<std::ptrdiff_t>(i));
    }
  }
  // Phase 2 over the original columns: minimize sum y.
  for (auto& row : t.rows) {
    Rational rhs = row.back();
    row.resize(n);
    row.push_back(rhs);
  }
  t.cost.assign(n + 1, Rational(1));
  t.cost.back() = 0;
  for (std::size_t i = 0; i < t.rows.size(); ++i)
    for (std::size_t j = 0; j <= n; ++j) t.cost[j] -= t.rows[i][j];
  if (!t.optimize(n)) throw Falsification("simplex: unbounded objective with nonnegative costs");

  RationalVector y(n, Rational(0));
  for (std::size_t i = 0; i < t.rows.size(); ++i) y[t.basis[i]] = t.rows[i].back();
  return y;
}

namespace {

bool is_kernel_vector(const std::vector<WeightVector>& cols, const std::vector<BigInt>& x) {
  if (cols.empty()) return true;
  WeightVector sum(cols.front().dim());
  for (std::size_t i = 0; i < cols.size(); ++i) {
    if (x[i] < 1) return false;
    sum += cols[i] * x[i];
  }
  return sum.is_zero();
}

// Odometer over [1, limit]^n. Only used when the simplex answer is too big.
std::optional<std::vector<BigInt>> bounded_search(const std::vector<WeightVector>& cols,
                                                  const BigInt& limit, std::size_t budget) {
  const std::size_t n = cols.size();
  std::vector<BigInt> x(n, BigInt(1));
  std::size_t steps = 0;
  while (true) {
    if (is_kernel_vector(cols, x)) return x;
    if (++steps > budget) throw BudgetExceeded("bounded kernel search budget exceeded");
    std::size_t i = 0;
    while (i < n && x[i] == limit) x[i++] = 1;
    if (i == n) return std::nullopt;
    ++x[i];
  }
}

}  // namespace

std::optional<std::vector<BigInt>> positive_kernel_solution(const ColumnSystem& s) {
  const auto& cols = s.columns();
  const std::size_t n = cols.size();
  if (n == 0) return std::nullopt;
  const std::size_t d = cols.front().dim();

  // x = 1 + y with y >= 0 and A y = -A 1.
  RationalMatrix a(d, RationalVector(n));
  RationalVector b(d, Rational(0));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      a[i][j] = Rational(cols[j][i]);
      b[i] -= a[i][j];
    }
  auto y = nonnegative_solution(a, b);
  if (!y) return std::nullopt;

  RationalVector x(n);
  for (std::size_t j = 0; j < n; ++j) x[j] = (*y)[j] + 1;
  const BigInt l = denominator_lcm(x);
  std::vector<BigInt> out(n);
  BigInt g = 0;
  for (std::size_t j = 0; j < n; ++j) {
    out[j] = BigInt(boost::multiprecision::numerator(x[j])) *
             (l / BigInt(boost::multiprecision::denominator(x[j])));
    g = boost::multiprecision::gcd(g, out[j]);
  }
  for (auto& v : out) v /= g;
  if (!is_kernel_vector(cols, out)) throw Falsification("simplex returned a non-kernel vector");

  const BigInt limit = bound_S(s.m(), std::max<std::size_t>(s.rank(), 1));
  if (*std::max_element(out.begin(), out.end()) <= limit) return out;
  auto small = bounded_search(cols, limit, 10'000'000);
  if (!small)
    throw Falsification("positive kernel solution exists but none is bounded by " + limit.str());
  return small;
}

Alternative alternatives(const ColumnSystem& s) {
  if (auto x = positive_kernel_solution(s)) {
    if (!is_kernel_vector(s.columns(), *x)) throw Falsification("positive combination recheck failed");
    return PositiveCombination{std::move(*x)};
  }
  if (s.ambient().dim() == 0) throw Falsification("alternatives: zero ambient with no columns");
  for (auto& h : enumerate_m_open_halfspaces(s.m(), s.ambient())) {
    bool all = std::all_of(s.columns().begin(), s.columns().end(),
                           [&](const WeightVector& c) { return h.closure_contains(c); });
    if (all) return ClosedHalfSpace{std::move(h)};
  }
  throw Falsification("alternatives: neither a closed half-space nor a positive combination");
}

}  // namespace mwg
