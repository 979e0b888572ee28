#pragma once

#include "mwg/first_cycle.hpp"
#include "mwg/game.hpp"
#include "mwg/halfspace.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

namespace mwg {

// Exact bound values; vectors are indexed by level k-1.
struct BoundsPack {
  BigInt m;  // |V| * ||E||
  std::size_t d = 0;
  BigInt B;
  std::vector<BigInt> U, u, S, L;
  // Set when U and u were replaced by the test knob; nothing proven
  // about the automaton carries over.
  std::optional<BigInt> scaled_base;
};

BoundsPack bounds(const GameGraph& g);
// U(k) = q^{2k}, u(k) = q^{2k-1}; other fields as in bounds(g).
BoundsPack scaled_bounds(const GameGraph& g, const BigInt& q);

// Largest coefficient of positive_kernel_solution over all subsets of the
// nonzero simple-cycle weights. A scaled base at least this large keeps
// U(k) >= u(k) x(i), which is what makes cancellations well-defined.
BigInt kernel_scale(const GameGraph& g, std::size_t max_subsets = 1u << 16);

// A player's side of a simulated play. choose() is only called at vertices
// the player owns; observe() sees every move.
class Strategy {
 public:
  virtual ~Strategy() = default;
  virtual void reset(const Configuration& start, std::uint64_t seed) { (void)start, (void)seed; }
  virtual EdgeId choose(const Configuration& current) = 0;
  virtual void observe(EdgeId taken, const Configuration& next) { (void)taken, (void)next; }
  virtual std::string name() const = 0;
};

// Edge from `current` to `next` explaining the observed level change;
// lowest ordinal among parallel matches.
EdgeId infer_edge(const GameGraph& g, const Configuration& current, const Configuration& next);

class RandomStrategy : public Strategy {
 public:
  explicit RandomStrategy(const GameGraph& g) : g_(g) {}
  void reset(const Configuration&, std::uint64_t seed) override { rng_.seed(seed); }
  EdgeId choose(const Configuration& current) override;
  std::string name() const override { return "random"; }

 private:
  const GameGraph& g_;
  std::mt19937_64 rng_;
};

// A fixed edge per vertex; vertices without an entry use their first edge.
class CounterlessStrategy : public Strategy {
 public:
  CounterlessStrategy(const GameGraph& g, std::unordered_map<VertexId, EdgeId> choice);
  EdgeId choose(const Configuration& current) override;
  std::string name() const override { return "counterless"; }

 private:
  const GameGraph& g_;
  std::unordered_map<VertexId, EdgeId> choice_;
};

// Plays the listed edges in order at the owner's turns.
class ScriptedStrategy : public Strategy {
 public:
  ScriptedStrategy(const GameGraph& g, std::vector<EdgeId> moves) : g_(g), moves_(std::move(moves)) {}
  void reset(const Configuration&, std::uint64_t) override { next_ = 0; }
  EdgeId choose(const Configuration& current) override;
  std::string name() const override { return "scripted"; }

 private:
  const GameGraph& g_;
  std::vector<EdgeId> moves_;
  std::size_t next_ = 0;
};

// At the source of `if_ge`: take it when level[coordinate] >= threshold,
// else `otherwise`. Elsewhere the first edge.
class ThresholdStrategy : public Strategy {
 public:
  ThresholdStrategy(const GameGraph& g, std::size_t coordinate, BigInt threshold, EdgeId if_ge,
                    EdgeId otherwise);
  EdgeId choose(const Configuration& current) override;
  std::string name() const override { return "threshold"; }

 private:
  const GameGraph& g_;
  std::size_t coordinate_;
  BigInt threshold_;
  EdgeId if_ge_, otherwise_;
};

// Player 2's lift of a winning first-cycle strategy: copies its moves and
// cuts every completed cycle out of the residual path.
class P2Lift : public Strategy {
 public:
  P2Lift(const GameGraph& g, FcbStrategy strategy);
  void reset(const Configuration& start, std::uint64_t seed) override;
  EdgeId choose(const Configuration& current) override;
  void observe(EdgeId taken, const Configuration& next) override;
  // Infers the edge from the level change; throws InconsistentObservation.
  void observe(const Configuration& next);
  std::string name() const override { return "p2-lift"; }

  const FcbState& memory() const { return memory_; }
  std::size_t max_memory() const { return max_memory_; }

 private:
  const GameGraph& g_;
  FcbStrategy strategy_;
  FcbState memory_;
  Configuration current_;
  std::size_t max_memory_ = 0;
};

// Coloured simple path of the automaton. Colours are chains of the
// automaton's half-space universe.
struct ColouredPath {
  VertexId start = 0;
  std::vector<EdgeId> edges;
  std::vector<std::optional<Chain>> colours;
};

// Picks Player 1's edge from the automaton's memory.
class P1Policy {
 public:
  virtual ~P1Policy() = default;
  virtual EdgeId choose(const GameGraph& g, const ColouredPath& gamma, const Chain& colour,
                        HalfSpaceUniverse& universe) = 0;
  virtual std::string name() const = 0;
};

// Copies a winning first-cycle strategy for Player 1.
class FcbPolicy : public P1Policy {
 public:
  explicit FcbPolicy(FcbStrategy strategy);
  EdgeId choose(const GameGraph& g, const ColouredPath& gamma, const Chain& colour,
                HalfSpaceUniverse& universe) override;
  std::string name() const override { return "fcb"; }

 private:
  ColourId colour_id(const Chain& c, HalfSpaceUniverse& universe);
  FcbStrategy strategy_;
  std::map<Chain, ColourId> ids_;
};

// First edge, in canonical order, that does not immediately close a cycle
// Player 2 wins under the current colour. Not a winning strategy in
// general; used where Player 1 has none.
class GreedyPolicy : public P1Policy {
 public:
  EdgeId choose(const GameGraph& g, const ColouredPath& gamma, const Chain& colour,
                HalfSpaceUniverse& universe) override;
  std::string name() const override { return "greedy"; }
};

enum class EventKind { Shift, Cancel };

struct AutomatonEvent {
  std::size_t step;
  EventKind kind;
  std::size_t k;
  std::string colour;  // encoding of the new colour
};

// "t=<step> kind=<shift|cancel> k=<level> colour=<encoding>"
std::string to_string(const AutomatonEvent& e);

struct AutomatonChecks {
  std::size_t steps = 0;
  std::size_t energy_identity_failures = 0;
  std::size_t negative_counters = 0;
  std::size_t non_monotone_counters = 0;
  std::size_t hard_bound_violations = 0;
  std::size_t soft_bound_restore_failures = 0;
  std::size_t infeasible_cancellations = 0;
  std::size_t unknown_cycle_weights = 0;
  std::size_t shifts = 0;
  std::size_t cancellations = 0;
  // Failures that the proofs rule out for a winning policy at true bounds.
  bool clean() const {
    return energy_identity_failures + negative_counters + non_monotone_counters +
               soft_bound_restore_failures + infeasible_cancellations + unknown_cycle_weights == 0;
  }
};

// Player 1's finite-memory automaton: coloured simple path, current
// perfect half-space and the counter table c(k, W).
class P1Automaton : public Strategy {
 public:
  P1Automaton(const GameGraph& g, std::unique_ptr<P1Policy> policy, BoundsPack bounds,
              std::size_t enumeration_budget = kDefaultEnumerationBudget);

  void reset(const Configuration& start, std::uint64_t seed) override;
  EdgeId choose(const Configuration& current) override;
  void observe(EdgeId taken, const Configuration& next) override;
  std::string name() const override { return "p1-automaton/" + policy_->name(); }

  const ColouredPath& gamma() const { return gamma_; }
  PerfectHalfSpace colour() const { return universe_.materialize(colour_); }
  const std::vector<WeightVector>& weights() const { return weights_; }
  // counters()[k-1][i] is c(k, weights()[i]).
  const std::vector<std::vector<BigInt>>& counters() const { return counters_; }
  const std::vector<AutomatonEvent>& events() const { return events_; }
  const AutomatonChecks& checks() const { return checks_; }
  const BoundsPack& bound_values() const { return bounds_; }

 private:
  void update_colour();
  void check_invariants(const Configuration& next);

  const GameGraph& g_;
  std::unique_ptr<P1Policy> policy_;
  BoundsPack bounds_;
  HalfSpaceUniverse universe_;
  std::vector<WeightVector> weights_;
  std::unordered_map<WeightVector, std::size_t, WeightVectorHash> weight_index_;

  ColouredPath gamma_;
  std::vector<int> position_;  // of each vertex on gamma, -1 if absent
  Chain colour_;
  std::vector<std::vector<BigInt>> counters_;
  std::vector<AutomatonEvent> events_;
  AutomatonChecks checks_;
  std::size_t step_ = 0;
};

struct CounterEntry {
  std::size_t k;
  WeightVector weight;
  BigInt value;
};

struct SimulationReport {
  std::size_t steps = 0;
  Trace trace;  // steps + 1 configurations when kept
  BigInt max_norm;
  std::vector<std::string> events;
  std::vector<CounterEntry> final_counters;
  std::optional<AutomatonChecks> checks;
  std::size_t max_p2_memory = 0;
};

struct SimulationOptions {
  bool keep_trace = true;
};

// Deterministic given the seed; strategies are reset first.
SimulationReport simulate(const GameGraph& g, VertexId start, Strategy& s1, Strategy& s2,
                          std::size_t steps, std::uint64_t seed, const SimulationOptions& opts = {});

}  // namespace mwg
