#pragma once

#include "mwg/vector.hpp"

#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace mwg {

// A linear subspace of Q^d in canonical form: reduced row echelon rows
// scaled to primitive integer vectors with positive pivots. Equal
// subspaces have identical bases.
class Subspace {
 public:
  Subspace() = default;

  static Subspace span(std::size_t ambient_dim, std::span<const WeightVector> generators);
  static Subspace whole(std::size_t ambient_dim);
  static Subspace zero(std::size_t ambient_dim) { return Subspace(ambient_dim, {}); }

  std::size_t ambient_dim() const { return ambient_dim_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<WeightVector>& basis() const { return basis_; }

  bool contains(const WeightVector& v) const;
  bool contains(const Subspace& other) const;

  // "[1,0;0,1]"; "[]" for the zero space.
  std::string encoding() const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_dim_ == b.ambient_dim_ && a.basis_ == b.basis_;
  }
  friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }
  // (dim, basis entries) lexicographically.
  friend bool operator<(const Subspace& a, const Subspace& b);

 private:
  Subspace(std::size_t ambient_dim, std::vector<WeightVector> basis)
      : ambient_dim_(ambient_dim), basis_(std::move(basis)) {}

  std::size_t ambient_dim_ = 0;
  std::vector<WeightVector> basis_;
  std::vector<std::size_t> pivots_;
};

Subspace span(std::size_t ambient_dim, std::span<const WeightVector> generators);

// {v in ambient : normal . v < 0}, where the normal is a primitive integer
// vector of the ambient space. Its boundary is ambient ∩ normal^⊥.
class OpenHalfSpace {
 public:
  OpenHalfSpace(Subspace ambient, WeightVector normal);

  const Subspace& ambient() const { return ambient_; }
  const Subspace& boundary() const { return boundary_; }
  const WeightVector& normal() const { return normal_; }
  std::size_t dim() const { return ambient_.dim(); }

  bool contains(const WeightVector& v) const;
  bool closure_contains(const WeightVector& v) const;
  // The open half-space opposite to this one within the ambient space.
  bool strict_part_contains(const WeightVector& v) const;

  // "dim/boundary-rows/normal", e.g. "2/[1,-1]/(-1,-1)".
  std::string encoding() const;

  friend bool operator==(const OpenHalfSpace& a, const OpenHalfSpace& b) {
    return a.ambient_ == b.ambient_ && a.normal_ == b.normal_;
  }

 private:
  Subspace ambient_;
  WeightVector normal_;
  Subspace boundary_;
};

// The fixed linear order on open half-spaces: dimension, then canonical
// boundary entries, then normal entries, all lexicographic.
bool hs_lt(const OpenHalfSpace& a, const OpenHalfSpace& b);

// Membership predicate for the strict part: ambient minus the closure.
bool in_strict_part(const OpenHalfSpace& h, const WeightVector& v);

// A partially-perfect half-space H_d ∪ ... ∪ H_k stored top-down, H_d
// first. The empty chain is the (d+1)-perfect half-space.
class PerfectHalfSpace {
 public:
  PerfectHalfSpace() = default;
  PerfectHalfSpace(std::size_t ambient_dim, std::vector<OpenHalfSpace> chain);

  std::size_t ambient_dim() const { return d_; }
  // k such that the chain is H_d ∪ ... ∪ H_k.
  std::size_t lowest_level() const { return d_ + 1 - chain_.size(); }
  bool is_perfect() const { return chain_.size() == d_; }
  bool empty() const { return chain_.empty(); }
  const std::vector<OpenHalfSpace>& chain() const { return chain_; }
  // H_level, 1-based level in [lowest_level(), d].
  const OpenHalfSpace& at_level(std::size_t level) const;

  bool contains(const WeightVector& v) const;
  // Keeps H_d ... H_{d-levels+1}.
  PerfectHalfSpace prefix(std::size_t levels) const;

  std::string encoding() const;

  friend bool operator==(const PerfectHalfSpace& a, const PerfectHalfSpace& b) {
    return a.d_ == b.d_ && a.chain_ == b.chain_;
  }

 private:
  std::size_t d_ = 0;
  std::vector<OpenHalfSpace> chain_;
};

// a ≺ b: the chains agree above some level and differ there by hs_lt.
bool pphs_prec(const PerfectHalfSpace& a, const PerfectHalfSpace& b);

// Largest partially-perfect half-space contained in all colours: their
// longest common prefix.
PerfectHalfSpace lca(std::span<const PerfectHalfSpace> colours);

bool contains(const PerfectHalfSpace& p, const WeightVector& v);

// 2 (2M+1)^{d(k-1)}
BigInt bound_L(std::size_t k, const BigInt& m, std::size_t d);

inline constexpr std::size_t kDefaultEnumerationBudget = 2'000'000;

using HalfSpaceId = std::uint32_t;
using Chain = std::vector<HalfSpaceId>;  // H_d first

// All M-generated open and perfect half-spaces of Q^d, interned and
// enumerated lazily. Enumerations are cached per ambient subspace and are
// deterministic. Not thread-safe; share read-only after warm-up or use
// one instance per thread.
class HalfSpaceUniverse {
 public:
  HalfSpaceUniverse(BigInt m, std::size_t d, std::size_t budget = kDefaultEnumerationBudget);

  const BigInt& m() const { return m_; }
  std::size_t dimension() const { return d_; }

  const OpenHalfSpace& half_space(HalfSpaceId id) const { return half_spaces_.at(id); }
  std::size_t num_half_spaces() const { return half_spaces_.size(); }

  // Primitive lattice directions (one per sign pair) of norm <= M in `s`.
  const std::vector<WeightVector>& directions(const Subspace& s);

  // All M-generated open half-spaces of `ambient`, sorted by hs_lt.
  const std::vector<HalfSpaceId>& half_spaces_of(const Subspace& ambient);

  // All M-generated perfect half-spaces sorted by ≺. Throws
  // BudgetExceeded past the budget.
  const std::vector<Chain>& perfect();

  // ≺-minimal perfect half-space extending the given prefix.
  Chain minimal_completion(Chain prefix);

  // Ambient space of H_level for a chain whose levels above it are fixed.
  Subspace level_ambient(const Chain& chain, std::size_t level) const;

  // Chain versions of shift_target and cancel_target below.
  std::optional<Chain> shift(const Chain& current, std::size_t k,
                             std::span<const WeightVector> violating);
  Chain cancel(const Chain& current, std::size_t k);

  bool chain_prec(const Chain& a, const Chain& b) const;
  PerfectHalfSpace materialize(const Chain& chain) const;
  HalfSpaceId intern(const OpenHalfSpace& h);
  Chain intern(const PerfectHalfSpace& p);

 private:
  void charge(std::size_t amount);

  BigInt m_;
  std::size_t d_;
  std::size_t budget_;
  std::size_t spent_ = 0;
  std::vector<WeightVector> all_directions_;
  std::deque<OpenHalfSpace> half_spaces_;  // stable references across interning
  std::map<std::string, HalfSpaceId> by_encoding_;
  std::map<Subspace, std::vector<WeightVector>> directions_;
  std::map<Subspace, std::vector<HalfSpaceId>> children_;
  std::optional<std::vector<Chain>> perfect_;
};

// Open half-spaces of `ambient` whose boundary is M-generated, sorted.
std::vector<OpenHalfSpace> enumerate_m_open_halfspaces(
    const BigInt& m, const Subspace& ambient, std::size_t budget = kDefaultEnumerationBudget);

std::vector<PerfectHalfSpace> enumerate_perfect_halfspaces(
    const BigInt& m, std::size_t d, std::size_t budget = kDefaultEnumerationBudget);

// Level-k shift: the ≺-minimal perfect half-space that keeps H_d..H_{k+1}
// and uses the <-minimal M-generated open half-space H of <H_k> whose
// strict part avoids every violating weight. Empty if none exists.
std::optional<PerfectHalfSpace> shift_target(const PerfectHalfSpace& current, std::size_t k,
                                             std::span<const WeightVector> violating,
                                             const BigInt& m);

// Level-k cancellation target: the ≺-minimal perfect half-space keeping
// H_d..H_{k+1}.
PerfectHalfSpace cancel_target(const PerfectHalfSpace& current, std::size_t k, const BigInt& m);

}  // namespace mwg
