#pragma once

#include "mwg/energy.hpp"
#include "mwg/game.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mwg {

struct SelfCoveringNode {
  VertexId vertex;
  WeightVector level;
  std::optional<EdgeId> via;  // edge from the parent
  std::vector<SelfCoveringNode> children;
  // Depth of the ancestor this leaf covers, when it is a covered leaf.
  std::optional<std::size_t> covers;
};

struct SelfCoveringResult {
  bool win1 = false;  // false means inconclusive, never a Player-2 win
  std::size_t depth = 0;  // minimal depth of a certificate, or the limit searched
  std::optional<SelfCoveringNode> tree;
  std::size_t nodes_visited = 0;
};

std::size_t tree_size(const SelfCoveringNode& n);
std::size_t tree_leaves(const SelfCoveringNode& n);
std::size_t tree_depth(const SelfCoveringNode& n);

// Finite Player-1 strategy tree whose leaves each dominate an ancestor at
// the same vertex. Iterative deepening finds the smallest depth; among
// trees of that depth the one with fewest nodes is returned, ties broken
// by canonical edge order.
SelfCoveringResult self_covering_search(const GameGraph& g, VertexId start, std::size_t max_depth,
                                        std::size_t node_budget = 50'000'000);

struct RandomGameParams {
  std::size_t vertices = 3;
  std::size_t dimension = 2;
  long long wmax = 1;
  double p1_fraction = 0.5;
  std::size_t max_out_degree = 3;
};

// Deterministic given the seed. Player-2-only cycles are broken by handing
// one of their vertices to Player 1, so the vertex count is kept.
GameGraph random_game(const RandomGameParams& p, std::uint64_t seed);

struct CrossCheckReport {
  Player fcb_lossy = Player::Two;        // first-cycle winner on lossy(g)
  std::optional<SolveResult> box_lossy;   // box deepening on lossy(g)
  SelfCoveringResult oracle;
  bool contradiction = false;
  std::vector<std::string> notes;
};

struct CrossCheckOptions {
  SolveOptions solve;
  std::size_t oracle_depth = 8;
  std::size_t oracle_budget = 5'000'000;
};

CrossCheckReport cross_check(const GameGraph& g, VertexId start, const CrossCheckOptions& opts = {});

}  // namespace mwg
