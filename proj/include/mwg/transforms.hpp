#pragma once

#include "mwg/game.hpp"

#include <string>

namespace mwg {

// Adds a self-loop labelled -e_i, for every coordinate i, at each
// Player-1 vertex.
GameGraph lossy(const GameGraph& g);

inline constexpr std::size_t kDefaultArenaBudget = 4'000'000;

// Name of the product vertex (v, a) in a capped graph.
std::string capped_vertex_name(const std::string& base, const BigInt& tracked);

// Name of the losing sink added by capping `g` (unique within g).
std::string capped_sink_name(const GameGraph& g);

// Product of g with the running total of coordinate `axis` (0-based),
// restricted to [-fence, cap]. Transitions leaving the interval go to a
// Player-1 sink whose only edge is a +e_1 self-loop. Every vertex of g is
// kept in all fence + cap + 1 copies, reachable or not. Throws
// BudgetExceeded when the vertex count would exceed `arena_budget`.
GameGraph capped(const GameGraph& g, std::size_t axis, const BigInt& fence, const BigInt& cap,
                 std::size_t arena_budget = kDefaultArenaBudget);

// lossy(g) followed by capped() on every coordinate in order, with fence
// credit(i) and a common cap.
GameGraph capped_chain(const GameGraph& g, const WeightVector& credit, const BigInt& cap,
                       std::size_t arena_budget = kDefaultArenaBudget);

// Name of (v, 0, ..., 0) in capped_chain output.
std::string capped_chain_start(const std::string& base, std::size_t dimension);

// A_d for the recurrence A_0 = nv,
//   A_{i+1} = 1 + A_i (credit(i+1) + (4 A_i ne_norm)^{2 (d+2)^3}).
BigInt arena_size_bound(const BigInt& nv, const BigInt& ne_norm, const WeightVector& credit,
                        std::size_t d);

}  // namespace mwg
