#pragma once

#include "mwg/game.hpp"
#include "mwg/halfspace.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace mwg {

// Index into the colour universe of a solve.
using ColourId = std::uint32_t;
using Universe = std::vector<PerfectHalfSpace>;

struct ColouredStep {
  EdgeId edge;
  std::optional<ColourId> colour;  // present iff the edge leaves a Player-1 vertex
  friend bool operator==(const ColouredStep&, const ColouredStep&) = default;
};

// A coloured simple path from `start`; the current vertex is the last one.
struct FcbState {
  VertexId start = 0;
  std::vector<ColouredStep> steps;
};

std::vector<VertexId> path_vertices(const GameGraph& g, const FcbState& s);
VertexId current_vertex(const GameGraph& g, const FcbState& s);
// start, then (edge, colour or -1) per step.
std::vector<std::int32_t> encode(const FcbState& s);

// Player 2 iff lca(colours) contains the weight.
Player evaluate_cycle(const WeightVector& weight, std::span<const PerfectHalfSpace> colours);
// Same, for the steps of a closed cycle.
Player evaluate_cycle(const GameGraph& g, std::span<const ColouredStep> cycle, const Universe& universe);

struct FcbDecision {
  enum class Kind : std::uint8_t { Colour, Edge };
  Kind kind;
  std::uint32_t value;
  friend bool operator==(const FcbDecision&, const FcbDecision&) = default;
};

// Decisions of the winner on every state reachable under the strategy.
// Player 2: colour at Player-1 states, edge at Player-2 states.
// Player 1: edge per (Player-1 state, offered colour).
class FcbStrategy {
 public:
  FcbStrategy(Player player, std::shared_ptr<const Universe> universe)
      : player_(player), universe_(std::move(universe)) {}

  Player player() const { return player_; }
  const Universe& universe() const { return *universe_; }
  std::shared_ptr<const Universe> universe_ptr() const { return universe_; }
  std::size_t size() const { return table_.size(); }
  const std::map<std::vector<std::int32_t>, FcbDecision>& table() const { return table_; }

  void set(std::vector<std::int32_t> key, FcbDecision d) { table_[std::move(key)] = d; }
  const FcbDecision* find(const std::vector<std::int32_t>& key) const;

  std::optional<ColourId> colour_id(const PerfectHalfSpace& colour) const;

 private:
  Player player_;
  std::shared_ptr<const Universe> universe_;
  std::map<std::vector<std::int32_t>, FcbDecision> table_;
  mutable std::map<std::string, ColourId> by_encoding_;
};

struct FcbOptions {
  // Colour universe; defaults to the perfect half-spaces generated by
  // M = |V| * ||E||.
  std::optional<Universe> universe;
  std::size_t node_budget = 20'000'000;
  std::size_t enumeration_budget = kDefaultEnumerationBudget;
  bool extract_strategy = true;
};

struct FcbResult {
  Player winner;
  std::optional<FcbStrategy> strategy;
  std::size_t nodes = 0;
  BigInt m;  // generating norm of the default universe
  std::shared_ptr<const Universe> universe;
};

BigInt colour_norm(const GameGraph& g);  // |V| * ||E||

FcbResult solve_fcb(const GameGraph& g, VertexId start, const FcbOptions& opts = {});

// Throws UndefinedState off the strategy's domain, including states whose
// path already repeats a vertex.
FcbDecision fcb_move(const GameGraph& g, const FcbStrategy& s, const FcbState& state,
                     std::optional<ColourId> offered = std::nullopt);

// One line per table entry: "<state> => <decision>".
std::string dump_strategy(const GameGraph& g, const FcbStrategy& s);

}  // namespace mwg
