#pragma once

#include "mwg/first_cycle.hpp"
#include "mwg/game.hpp"
#include "mwg/transforms.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mwg {

// What leaving the box through an upper face means.
enum class UpperExit : std::uint8_t {
  Lose,  // Player 1 loses, as in the capped construction
  Win,   // Player 1 wins; used only to certify Player-2 wins
};

// Positional solution of the safety game on (vertex, level in [lower, upper])
// whose exits lead to a sink.
class BoxSolution {
 public:
  Player winner() const { return winner_; }
  std::size_t num_states() const { return attracted_.size(); }
  const WeightVector& lower() const { return lower_; }
  const WeightVector& upper() const { return upper_; }

  bool in_box(const WeightVector& level) const;
  // Player 1 wins from c (c inside the box and outside the attractor).
  bool player1_wins(const Configuration& c) const;
  // The winner's positional move at a state the mover owns: Player 1
  // stays outside the attractor, Player 2 descends its ranks.
  EdgeId choose(const Configuration& c) const;

 private:
  friend BoxSolution solve_safety_box(const GameGraph&, VertexId, const WeightVector&, const WeightVector&,
                                      std::size_t, UpperExit);
  std::size_t index(const Configuration& c) const;

  const GameGraph* g_ = nullptr;
  Player winner_ = Player::Two;
  WeightVector lower_, upper_;
  std::vector<std::int64_t> lo_, width_;
  UpperExit upper_exit_ = UpperExit::Lose;
  std::vector<std::uint8_t> attracted_;
  std::vector<std::uint32_t> rank_;
};

BoxSolution solve_safety_box(const GameGraph& g, VertexId start, const WeightVector& lower,
                             const WeightVector& upper, std::size_t arena_budget = kDefaultArenaBudget,
                             UpperExit upper_exit = UpperExit::Lose);

enum class SolveMode : std::uint8_t { Fcb, Box, Auto };
std::string to_string(SolveMode m);
SolveMode parse_mode(const std::string& s);

struct SolveOptions {
  SolveMode mode = SolveMode::Auto;
  // Fixed cap; no deepening unless `deepen` is also set, in which case it
  // is the last cap tried.
  std::optional<BigInt> cap;
  bool deepen = true;
  BigInt max_cap = 256;
  std::size_t arena_budget = kDefaultArenaBudget;
  std::size_t enumeration_budget = kDefaultEnumerationBudget;
  std::size_t node_budget = 20'000'000;
  bool extract_strategy = false;
  // Given-credit only: also solve the box where overflow wins for Player 1.
  // A Player-2 win there is a sound Player-2 certificate.
  bool certify_player2 = true;
};

struct SolveResult {
  Player winner = Player::Two;
  bool certified = false;
  std::string method;  // "fcb", "box", "oracle"
  std::optional<BigInt> cap_used;
  std::string witness;  // short description of the certificate
  std::optional<FcbResult> fcb;
};

SolveResult solve_bounding(const GameGraph& g, VertexId start, const SolveOptions& opts = {});
SolveResult solve_arbitrary_credit(const GameGraph& g, VertexId start, const SolveOptions& opts = {});
SolveResult solve_given_credit(const GameGraph& g, VertexId start, const WeightVector& credit,
                               const SolveOptions& opts = {});

// Caps tried by deepening: C0 = |V| * ||E||, doubling, up to the max cap
// or the fixed cap.
std::vector<BigInt> cap_schedule(const GameGraph& g, const SolveOptions& opts);

struct ParetoResult {
  std::vector<WeightVector> antichain;
  // False when some probe ended with an uncertified Player-2 answer.
  bool complete = true;
  std::size_t probes = 0;
};

ParetoResult pareto_limit(const GameGraph& g, VertexId start, const BigInt& search_norm,
                          const SolveOptions& opts = {});

}  // namespace mwg
