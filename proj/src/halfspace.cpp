#include "mwg/halfspace.hpp"

#include "mwg/errors.hpp"
#include "mwg/rational.hpp"

#include <algorithm>
#include <set>

namespace mwg {

// ---------------------------------------------------------------- Subspace

Subspace Subspace::span(std::size_t ambient_dim, std::span<const WeightVector> generators) {
  RationalMatrix m;
  for (const auto& g : generators) {
    if (g.dim() != ambient_dim) throw InputError("span: generator has the wrong dimension");
    m.push_back(to_rational(g));
  }
  auto pivots = rref(m);
  std::vector<WeightVector> basis;
  basis.reserve(m.size());
  for (const auto& row : m) basis.push_back(primitive_integer(row));
  Subspace s(ambient_dim, std::move(basis));
  s.pivots_ = std::move(pivots);
  return s;
}

Subspace Subspace::whole(std::size_t ambient_dim) {
  std::vector<WeightVector> basis;
  for (std::size_t i = 0; i < ambient_dim; ++i) basis.push_back(WeightVector::unit(ambient_dim, i));
  Subspace s(ambient_dim, std::move(basis));
  for (std::size_t i = 0; i < ambient_dim; ++i) s.pivots_.push_back(i);
  return s;
}

bool Subspace::contains(const WeightVector& v) const {
  if (v.dim() != ambient_dim_) return false;
  if (basis_.size() == ambient_dim_) return true;
  WeightVector r = v;
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    const std::size_t p = pivots_[i];
    if (r[p] == 0) continue;
    BigInt coeff = r[p];
    r *= basis_[i][p];
    r -= basis_[i] * coeff;
  }
  return r.is_zero();
}

bool Subspace::contains(const Subspace& other) const {
  for (const auto& b : other.basis_)
    if (!contains(b)) return false;
  return true;
}

std::string Subspace::encoding() const {
  std::string s = "[";
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    if (i) s += ';';
    for (std::size_t j = 0; j < ambient_dim_; ++j) {
      if (j) s += ',';
      s += basis_[i][j].str();
    }
  }
  return s + "]";
}

bool operator<(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim_ != b.ambient_dim_) return a.ambient_dim_ < b.ambient_dim_;
  if (a.basis_.size() != b.basis_.size()) return a.basis_.size() < b.basis_.size();
  return a.basis_ < b.basis_;
}

Subspace span(std::size_t ambient_dim, std::span<const WeightVector> generators) {
  return Subspace::span(ambient_dim, generators);
}

namespace {

// Combination sum_i c_i basis_i.
WeightVector combine(const std::vector<WeightVector>& basis, const RationalVector& c,
                     std::size_t ambient_dim) {
  RationalVector v(ambient_dim, Rational(0));
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < ambient_dim; ++j) v[j] += c[i] * Rational(basis[i][j]);
  return primitive_integer(v);
}

// Elements of `ambient` orthogonal to all of `vectors`.
std::vector<WeightVector> orthogonal_within(const Subspace& ambient,
                                            std::span<const WeightVector> vectors) {
  const auto& basis = ambient.basis();
  RationalMatrix m;
  for (const auto& w : vectors) {
    RationalVector row;
    for (const auto& a : basis) row.emplace_back(dot(w, a));
    m.push_back(std::move(row));
  }
  std::vector<WeightVector> out;
  for (const auto& c : kernel_basis(std::move(m), basis.size()))
    out.push_back(combine(basis, c, ambient.ambient_dim()));
  return out;
}

}  // namespace

// ----------------------------------------------------------- OpenHalfSpace

OpenHalfSpace::OpenHalfSpace(Subspace ambient, WeightVector normal)
    : ambient_(std::move(ambient)), normal_(std::move(normal)) {
  if (ambient_.dim() == 0) throw InputError("open half-space of the zero space");
  if (normal_.is_zero() || !ambient_.contains(normal_))
    throw InputError("half-space normal " + to_string(normal_) + " is not a nonzero vector of " +
                     ambient_.encoding());
  if (primitive(normal_) != normal_) throw InputError("half-space normal is not primitive");
  const WeightVector n[] = {normal_};
  auto gens = orthogonal_within(ambient_, n);
  boundary_ = Subspace::span(ambient_.ambient_dim(), gens);
}

bool OpenHalfSpace::contains(const WeightVector& v) const {
  return dot(normal_, v) < 0 && ambient_.contains(v);
}

bool OpenHalfSpace::closure_contains(const WeightVector& v) const {
  return dot(normal_, v) <= 0 && ambient_.contains(v);
}

bool OpenHalfSpace::strict_part_contains(const WeightVector& v) const {
  return dot(normal_, v) > 0 && ambient_.contains(v);
}

std::string OpenHalfSpace::encoding() const {
  return std::to_string(dim()) + "/" + boundary_.encoding() + "/" + to_string(normal_);
}

bool hs_lt(const OpenHalfSpace& a, const OpenHalfSpace& b) {
  if (a.dim() != b.dim()) return a.dim() < b.dim();
  const auto& ba = a.boundary().basis();
  const auto& bb = b.boundary().basis();
  if (ba != bb) return ba < bb;
  return a.normal() < b.normal();
}

bool in_strict_part(const OpenHalfSpace& h, const WeightVector& v) {
  return h.strict_part_contains(v);
}

// -------------------------------------------------------- PerfectHalfSpace

PerfectHalfSpace::PerfectHalfSpace(std::size_t ambient_dim, std::vector<OpenHalfSpace> chain)
    : d_(ambient_dim), chain_(std::move(chain)) {
  if (chain_.size() > d_) throw InputError("half-space chain longer than the dimension");
  Subspace expected = Subspace::whole(d_);
  for (const auto& h : chain_) {
    if (h.ambient() != expected)
      throw InputError("half-space chain is not nested: " + h.encoding());
    expected = h.boundary();
  }
}

const OpenHalfSpace& PerfectHalfSpace::at_level(std::size_t level) const {
  if (level < lowest_level() || level > d_) throw InputError("level outside the chain");
  return chain_[d_ - level];
}

bool PerfectHalfSpace::contains(const WeightVector& v) const {
  // Walking down, v always lies in the current ambient: a zero dot product
  // places it on the boundary, which is the next ambient.
  for (const auto& h : chain_) {
    BigInt s = dot(h.normal(), v);
    if (s < 0) return true;
    if (s > 0) return false;
  }
  return false;
}

PerfectHalfSpace PerfectHalfSpace::prefix(std::size_t levels) const {
  PerfectHalfSpace p;
  p.d_ = d_;
  p.chain_.assign(chain_.begin(), chain_.begin() + std::min(levels, chain_.size()));
  return p;
}

std::string PerfectHalfSpace::encoding() const {
  std::string s = "{";
  for (std::size_t i = 0; i < chain_.size(); ++i) {
    if (i) s += " | ";
    s += chain_[i].encoding();
  }
  return s + "}";
}

bool pphs_prec(const PerfectHalfSpace& a, const PerfectHalfSpace& b) {
  const auto& ca = a.chain();
  const auto& cb = b.chain();
  const std::size_t n = std::min(ca.size(), cb.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (ca[i] == cb[i]) continue;
    return hs_lt(ca[i], cb[i]);
  }
  return false;
}

PerfectHalfSpace lca(std::span<const PerfectHalfSpace> colours) {
  if (colours.empty()) throw InputError("lca of an empty colour set");
  std::size_t common = colours.front().chain().size();
  for (const auto& c : colours.subspan(1)) {
    std::size_t i = 0;
    while (i < common && i < c.chain().size() && c.chain()[i] == colours.front().chain()[i]) ++i;
    common = i;
  }
  return colours.front().prefix(common);
}

bool contains(const PerfectHalfSpace& p, const WeightVector& v) { return p.contains(v); }

BigInt bound_L(std::size_t k, const BigInt& m, std::size_t d) {
  if (k < 1 || d < 1 || m < 1) throw InputError("bound_L expects positive arguments");
  return 2 * ipow(2 * m + 1, static_cast<unsigned long>(d * (k - 1)));
}

// -------------------------------------------------------- HalfSpaceUniverse

HalfSpaceUniverse::HalfSpaceUniverse(BigInt m, std::size_t d, std::size_t budget)
    : m_(std::move(m)), d_(d), budget_(budget) {
  if (m_ < 1) throw InputError("the generating norm M must be positive");
  if (d_ < 1) throw InputError("the dimension must be positive");
  BigInt points = ipow(2 * m_ + 1, d_);
  if (points > budget_)
    throw BudgetExceeded("lattice box [-M,M]^d has " + points.str() + " points (budget " +
                         std::to_string(budget_) + ")");
  charge(points.convert_to<std::size_t>());
  const long long mm = m_.convert_to<long long>();
  std::vector<long long> odo(d_, -mm);
  while (true) {
    WeightVector v(d_);
    for (std::size_t i = 0; i < d_; ++i) v[i] = odo[i];
    if (!v.is_zero() && primitive(v) == v) {
      std::size_t first = 0;
      while (v[first] == 0) ++first;
      if (v[first] > 0) all_directions_.push_back(std::move(v));
    }
    std::size_t i = 0;
    while (i < d_ && odo[i] == mm) odo[i++] = -mm;
    if (i == d_) break;
    ++odo[i];
  }
  std::sort(all_directions_.begin(), all_directions_.end());
}

void HalfSpaceUniverse::charge(std::size_t amount) {
  spent_ += amount;
  if (spent_ > budget_)
    throw BudgetExceeded("half-space enumeration budget " + std::to_string(budget_) + " exceeded");
}

const std::vector<WeightVector>& HalfSpaceUniverse::directions(const Subspace& s) {
  auto it = directions_.find(s);
  if (it != directions_.end()) return it->second;
  std::vector<WeightVector> dirs;
  for (const auto& v : all_directions_)
    if (s.contains(v)) dirs.push_back(v);
  return directions_.emplace(s, std::move(dirs)).first->second;
}

HalfSpaceId HalfSpaceUniverse::intern(const OpenHalfSpace& h) {
  auto key = h.encoding();
  auto it = by_encoding_.find(key);
  if (it != by_encoding_.end()) return it->second;
  auto id = static_cast<HalfSpaceId>(half_spaces_.size());
  half_spaces_.push_back(h);
  by_encoding_.emplace(std::move(key), id);
  return id;
}

const std::vector<HalfSpaceId>& HalfSpaceUniverse::half_spaces_of(const Subspace& ambient) {
  auto it = children_.find(ambient);
  if (it != children_.end()) return it->second;
  if (ambient.ambient_dim() != d_) throw InputError("ambient subspace of the wrong dimension");
  if (ambient.dim() == 0) throw InputError("the zero space has no open half-spaces");

  const auto& dirs = directions(ambient);
  // M-generated subspaces of the ambient, built up one direction at a time.
  std::set<Subspace> layer = {Subspace::zero(d_)};
  for (std::size_t t = 0; t + 1 < ambient.dim(); ++t) {
    std::set<Subspace> next;
    for (const auto& s : layer) {
      for (const auto& v : dirs) {
        if (s.contains(v)) continue;
        std::vector<WeightVector> gens = s.basis();
        gens.push_back(v);
        next.insert(Subspace::span(d_, gens));
        charge(1);
      }
    }
    layer = std::move(next);
  }

  std::vector<OpenHalfSpace> found;
  for (const auto& boundary : layer) {
    if (boundary.dim() + 1 != ambient.dim()) continue;
    auto normals = orthogonal_within(ambient, boundary.basis());
    if (normals.size() != 1) throw Falsification("boundary is not a hyperplane of its ambient");
    found.emplace_back(ambient, normals.front());
    found.emplace_back(ambient, -normals.front());
    charge(2);
  }
  std::sort(found.begin(), found.end(), hs_lt);
  std::vector<HalfSpaceId> ids;
  ids.reserve(found.size());
  for (const auto& h : found) ids.push_back(intern(h));
  return children_.emplace(ambient, std::move(ids)).first->second;
}

Subspace HalfSpaceUniverse::level_ambient(const Chain& chain, std::size_t level) const {
  if (level < 1 || level > d_) throw InputError("level out of range");
  if (level == d_) return Subspace::whole(d_);
  const std::size_t above = d_ - level - 1;
  if (above >= chain.size()) throw InputError("chain does not reach the requested level");
  return half_spaces_[chain[above]].boundary();
}

Chain HalfSpaceUniverse::minimal_completion(Chain prefix) {
  while (prefix.size() < d_) {
    Subspace ambient =
        prefix.empty() ? Subspace::whole(d_) : half_spaces_[prefix.back()].boundary();
    const auto& kids = half_spaces_of(ambient);
    if (kids.empty()) throw Falsification("no M-generated half-space in " + ambient.encoding());
    prefix.push_back(kids.front());
  }
  return prefix;
}

const std::vector<Chain>& HalfSpaceUniverse::perfect() {
  if (perfect_) return *perfect_;
  std::vector<Chain> out;
  Chain chain;
  auto rec = [&](auto&& self, const Subspace& ambient) -> void {
    // Copy: half_spaces_of may rehash the cache while recursing.
    const std::vector<HalfSpaceId> kids = half_spaces_of(ambient);
    for (HalfSpaceId h : kids) {
      chain.push_back(h);
      if (chain.size() == d_) {
        charge(1);
        out.push_back(chain);
      } else {
        self(self, half_spaces_[h].boundary());
      }
      chain.pop_back();
    }
  };
  rec(rec, Subspace::whole(d_));
  perfect_ = std::move(out);
  return *perfect_;
}

bool HalfSpaceUniverse::chain_prec(const Chain& a, const Chain& b) const {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] == b[i]) continue;
    return hs_lt(half_spaces_[a[i]], half_spaces_[b[i]]);
  }
  return false;
}

std::optional<Chain> HalfSpaceUniverse::shift(const Chain& current, std::size_t k,
                                              std::span<const WeightVector> violating) {
  if (k < 1 || k > d_) throw InputError("shift level out of range");
  Subspace ambient = level_ambient(current, k);
  Chain prefix(current.begin(), current.begin() + static_cast<std::ptrdiff_t>(d_ - k));
  for (auto id : half_spaces_of(ambient)) {
    const auto& h = half_spaces_[id];
    bool ok = std::none_of(violating.begin(), violating.end(),
                           [&](const WeightVector& w) { return h.strict_part_contains(w); });
    if (!ok) continue;
    prefix.push_back(id);
    return minimal_completion(std::move(prefix));
  }
  return std::nullopt;
}

Chain HalfSpaceUniverse::cancel(const Chain& current, std::size_t k) {
  if (k < 1 || k > d_) throw InputError("cancellation level out of range");
  if (current.size() < d_ - k) throw InputError("chain does not reach the cancellation level");
  return minimal_completion(Chain(current.begin(), current.begin() + static_cast<std::ptrdiff_t>(d_ - k)));
}

PerfectHalfSpace HalfSpaceUniverse::materialize(const Chain& chain) const {
  std::vector<OpenHalfSpace> hs;
  for (auto id : chain) hs.push_back(half_spaces_.at(id));
  return PerfectHalfSpace(d_, std::move(hs));
}

Chain HalfSpaceUniverse::intern(const PerfectHalfSpace& p) {
  if (p.ambient_dim() != d_) throw InputError("perfect half-space of the wrong dimension");
  Chain c;
  for (const auto& h : p.chain()) c.push_back(intern(h));
  return c;
}

// ---------------------------------------------------------- free functions

std::vector<OpenHalfSpace> enumerate_m_open_halfspaces(const BigInt& m, const Subspace& ambient,
                                                       std::size_t budget) {
  HalfSpaceUniverse u(m, ambient.ambient_dim(), budget);
  std::vector<OpenHalfSpace> out;
  for (auto id : u.half_spaces_of(ambient)) out.push_back(u.half_space(id));
  return out;
}

std::vector<PerfectHalfSpace> enumerate_perfect_halfspaces(const BigInt& m, std::size_t d,
                                                           std::size_t budget) {
  HalfSpaceUniverse u(m, d, budget);
  std::vector<PerfectHalfSpace> out;
  for (const auto& c : u.perfect()) out.push_back(u.materialize(c));
  return out;
}

std::optional<PerfectHalfSpace> shift_target(const PerfectHalfSpace& current, std::size_t k,
                                             std::span<const WeightVector> violating,
                                             const BigInt& m) {
  HalfSpaceUniverse u(m, current.ambient_dim());
  auto c = u.shift(u.intern(current), k, violating);
  if (!c) return std::nullopt;
  return u.materialize(*c);
}

PerfectHalfSpace cancel_target(const PerfectHalfSpace& current, std::size_t k, const BigInt& m) {
  HalfSpaceUniverse u(m, current.ambient_dim());
  return u.materialize(u.cancel(u.intern(current), k));
}

}  // namespace mwg
