#include "mwg/strategy.hpp"

#include "mwg/errors.hpp"
#include "mwg/linalg.hpp"

#include <algorithm>

namespace mwg {

BoundsPack bounds(const GameGraph& g) {
  BoundsPack b;
  b.m = colour_norm(g);
  b.d = g.dimension();
  const BigInt base = 4 * b.m;
  const unsigned long sq = (b.d + 2) * (b.d + 2);
  b.B = ipow(base, 2 * sq * (b.d + 2));
  for (std::size_t k = 1; k <= b.d; ++k) {
    b.U.push_back(ipow(base, 2 * k * sq));
    b.u.push_back(ipow(base, (2 * k - 1) * sq));
    b.S.push_back(bound_S(b.m, k));
    b.L.push_back(bound_L(k, b.m, b.d));
  }
  return b;
}

BoundsPack scaled_bounds(const GameGraph& g, const BigInt& q) {
  if (q < 2) throw InputError("scaled bounds need a base of at least 2");
  BoundsPack b = bounds(g);
  for (std::size_t k = 1; k <= b.d; ++k) {
    b.U[k - 1] = ipow(q, 2 * k);
    b.u[k - 1] = ipow(q, 2 * k - 1);
  }
  b.scaled_base = q;
  return b;
}

BigInt kernel_scale(const GameGraph& g, std::size_t max_subsets) {
  const auto weights = enumerate_simple_cycles(g).weights;
  if (weights.size() >= 8 * sizeof(std::size_t) || (std::size_t{1} << weights.size()) > max_subsets)
    throw BudgetExceeded("kernel_scale: too many cycle weights (" + std::to_string(weights.size()) + ")");
  const BigInt m = colour_norm(g);
  BigInt best = 1;
  for (std::size_t mask = 1; mask < (std::size_t{1} << weights.size()); ++mask) {
    std::vector<WeightVector> cols;
    for (std::size_t i = 0; i < weights.size(); ++i)
      if (mask >> i & 1) cols.push_back(weights[i]);
    if (auto x = positive_kernel_solution(ColumnSystem(cols, m)))
      best = std::max(best, *std::max_element(x->begin(), x->end()));
  }
  return best;
}

EdgeId infer_edge(const GameGraph& g, const Configuration& current, const Configuration& next) {
  auto e = g.find_edge(current.vertex, next.vertex, next.level - current.level);
  if (!e)
    throw InconsistentObservation("no edge " + g.vertex(current.vertex).name + " -> " +
                                  g.vertex(next.vertex).name + " with weight " +
                                  to_string(next.level - current.level));
  return *e;
}

// ------------------------------------------------------------ adversaries

EdgeId RandomStrategy::choose(const Configuration& current) {
  auto out = g_.out_edges(current.vertex);
  std::uniform_int_distribution<std::size_t> pick(0, out.size() - 1);
  return out[pick(rng_)];
}

CounterlessStrategy::CounterlessStrategy(const GameGraph& g, std::unordered_map<VertexId, EdgeId> choice)
    : g_(g), choice_(std::move(choice)) {
  for (const auto& [v, e] : choice_)
    if (g_.edge(e).src != v) throw InputError("counterless choice leaves the wrong vertex");
}

EdgeId CounterlessStrategy::choose(const Configuration& current) {
  auto it = choice_.find(current.vertex);
  return it != choice_.end() ? it->second : g_.out_edges(current.vertex).front();
}

EdgeId ScriptedStrategy::choose(const Configuration& current) {
  if (next_ >= moves_.size()) throw InputError("scripted strategy ran out of moves");
  EdgeId e = moves_[next_++];
  if (g_.edge(e).src != current.vertex)
    throw InputError("scripted move " + std::to_string(next_) + " does not leave " +
                     g_.vertex(current.vertex).name);
  return e;
}

ThresholdStrategy::ThresholdStrategy(const GameGraph& g, std::size_t coordinate, BigInt threshold,
                                     EdgeId if_ge, EdgeId otherwise)
    : g_(g), coordinate_(coordinate), threshold_(std::move(threshold)), if_ge_(if_ge), otherwise_(otherwise) {
  if (coordinate_ >= g_.dimension()) throw InputError("threshold coordinate out of range");
  if (g_.edge(if_ge_).src != g_.edge(otherwise_).src)
    throw InputError("threshold edges must leave the same vertex");
}

EdgeId ThresholdStrategy::choose(const Configuration& current) {
  if (current.vertex != g_.edge(if_ge_).src) return g_.out_edges(current.vertex).front();
  return current.level[coordinate_] >= threshold_ ? if_ge_ : otherwise_;
}

// ----------------------------------------------------------- Player 2 lift

P2Lift::P2Lift(const GameGraph& g, FcbStrategy strategy) : g_(g), strategy_(std::move(strategy)) {
  if (strategy_.player() != Player::Two) throw InputError("P2Lift needs a Player-2 first-cycle strategy");
}

void P2Lift::reset(const Configuration& start, std::uint64_t) {
  memory_ = FcbState{start.vertex, {}};
  current_ = start;
  max_memory_ = 1;
}

EdgeId P2Lift::choose(const Configuration& current) {
  auto d = fcb_move(g_, strategy_, memory_);
  if (d.kind != FcbDecision::Kind::Edge || g_.edge(d.value).src != current.vertex)
    throw InconsistentObservation("lifted strategy asked to move off its memory");
  return d.value;
}

void P2Lift::observe(EdgeId taken, const Configuration& next) {
  const auto& e = g_.edge(taken);
  if (e.src != current_vertex(g_, memory_) || e.dst != next.vertex || next.level != current_.level + e.weight)
    throw InconsistentObservation("observed move does not extend the lifted memory");
  std::optional<ColourId> colour;
  if (g_.owner(e.src) == Player::One) {
    auto d = fcb_move(g_, strategy_, memory_);
    if (d.kind != FcbDecision::Kind::Colour) throw InconsistentObservation("expected a colour decision");
    colour = d.value;
  }
  auto vs = path_vertices(g_, memory_);
  auto it = std::find(vs.begin(), vs.end(), e.dst);
  if (it != vs.end()) {
    memory_.steps.resize(static_cast<std::size_t>(it - vs.begin()));
  } else {
    memory_.steps.push_back({taken, colour});
  }
  current_ = next;
  max_memory_ = std::max(max_memory_, memory_.steps.size() + 1);
}

void P2Lift::observe(const Configuration& next) { observe(infer_edge(g_, current_, next), next); }

// ------------------------------------------------------------- P1 policies

namespace {

// Does the common prefix of `chains` contain w?
bool lca_contains(HalfSpaceUniverse& universe, const std::vector<const Chain*>& chains, const WeightVector& w) {
  if (chains.empty() || w.is_zero()) return false;
  std::size_t len = chains.front()->size();
  for (const Chain* c : chains) {
    std::size_t i = 0;
    while (i < len && (*c)[i] == (*chains.front())[i]) ++i;
    len = i;
  }
  for (std::size_t i = 0; i < len; ++i) {
    int s = dot(universe.half_space((*chains.front())[i]).normal(), w).sign();
    if (s != 0) return s < 0;
  }
  return false;
}

std::vector<VertexId> gamma_vertices(const GameGraph& g, const ColouredPath& gamma) {
  std::vector<VertexId> vs{gamma.start};
  for (EdgeId e : gamma.edges) vs.push_back(g.edge(e).dst);
  return vs;
}

}  // namespace

FcbPolicy::FcbPolicy(FcbStrategy strategy) : strategy_(std::move(strategy)) {
  if (strategy_.player() != Player::One) throw InputError("FcbPolicy needs a Player-1 first-cycle strategy");
}

ColourId FcbPolicy::colour_id(const Chain& c, HalfSpaceUniverse& universe) {
  auto it = ids_.find(c);
  if (it != ids_.end()) return it->second;
  auto id = strategy_.colour_id(universe.materialize(c));
  if (!id) throw UndefinedState("automaton colour missing from the strategy's universe");
  ids_.emplace(c, *id);
  return *id;
}

EdgeId FcbPolicy::choose(const GameGraph& g, const ColouredPath& gamma, const Chain& colour,
                         HalfSpaceUniverse& universe) {
  FcbState s{gamma.start, {}};
  for (std::size_t i = 0; i < gamma.edges.size(); ++i) {
    std::optional<ColourId> c;
    if (gamma.colours[i]) c = colour_id(*gamma.colours[i], universe);
    s.steps.push_back({gamma.edges[i], c});
  }
  auto d = fcb_move(g, strategy_, s, colour_id(colour, universe));
  if (d.kind != FcbDecision::Kind::Edge) throw UndefinedState("Player-1 table returned a colour");
  return d.value;
}

EdgeId GreedyPolicy::choose(const GameGraph& g, const ColouredPath& gamma, const Chain& colour,
                            HalfSpaceUniverse& universe) {
  const auto vs = gamma_vertices(g, gamma);
  const VertexId v = vs.back();
  const bool coloured = g.owner(v) == Player::One;
  for (EdgeId e : g.out_edges(v)) {
    auto it = std::find(vs.begin(), vs.end(), g.edge(e).dst);
    if (it == vs.end()) return e;
    const auto j = static_cast<std::size_t>(it - vs.begin());
    WeightVector w = g.edge(e).weight;
    std::vector<const Chain*> chains;
    for (std::size_t i = j; i < gamma.edges.size(); ++i) {
      w += g.edge(gamma.edges[i]).weight;
      if (gamma.colours[i]) chains.push_back(&*gamma.colours[i]);
    }
    if (coloured) chains.push_back(&colour);
    if (!lca_contains(universe, chains, w)) return e;
  }
  return g.out_edges(v).front();
}

// ------------------------------------------------------------ P1 automaton

std::string to_string(const AutomatonEvent& e) {
  return "t=" + std::to_string(e.step) + " kind=" + (e.kind == EventKind::Shift ? "shift" : "cancel") +
         " k=" + std::to_string(e.k) + " colour=" + e.colour;
}

P1Automaton::P1Automaton(const GameGraph& g, std::unique_ptr<P1Policy> policy, BoundsPack bounds,
                         std::size_t enumeration_budget)
    : g_(g), policy_(std::move(policy)), bounds_(std::move(bounds)),
      universe_(bounds_.m, g.dimension(), enumeration_budget) {
  if (!policy_) throw InputError("P1Automaton needs a policy");
  if (bounds_.d != g.dimension()) throw InputError("bounds computed for another dimension");
  weights_ = enumerate_simple_cycles(g).weights;
  for (std::size_t i = 0; i < weights_.size(); ++i) weight_index_.emplace(weights_[i], i);
}

void P1Automaton::reset(const Configuration& start, std::uint64_t) {
  if (!start.level.is_zero()) throw InputError("plays start at the zero level");
  gamma_ = ColouredPath{start.vertex, {}, {}};
  position_.assign(g_.num_vertices(), -1);
  position_[start.vertex] = 0;
  colour_ = universe_.minimal_completion({});
  counters_.assign(g_.dimension(), std::vector<BigInt>(weights_.size(), BigInt(0)));
  events_.clear();
  checks_ = {};
  step_ = 0;
}

EdgeId P1Automaton::choose(const Configuration& current) {
  EdgeId e = policy_->choose(g_, gamma_, colour_, universe_);
  if (g_.edge(e).src != current.vertex) throw InconsistentObservation("automaton memory is off the play");
  return e;
}

void P1Automaton::observe(EdgeId taken, const Configuration& next) {
  ++step_;
  ++checks_.steps;
  const auto& e = g_.edge(taken);
  std::optional<Chain> colour;
  if (g_.owner(e.src) == Player::One) colour = colour_;

  if (int j = position_[e.dst]; j >= 0) {
    WeightVector w = e.weight;
    for (std::size_t i = static_cast<std::size_t>(j); i < gamma_.edges.size(); ++i) {
      w += g_.edge(gamma_.edges[i]).weight;
      position_[g_.edge(gamma_.edges[i]).dst] = -1;
    }
    position_[e.dst] = j;
    gamma_.edges.resize(static_cast<std::size_t>(j));
    gamma_.colours.resize(static_cast<std::size_t>(j));
    if (!w.is_zero()) {
      auto it = weight_index_.find(w);
      if (it == weight_index_.end()) {
        ++checks_.unknown_cycle_weights;
      } else {
        for (auto& level : counters_) ++level[it->second];
      }
    }
  } else {
    gamma_.edges.push_back(taken);
    gamma_.colours.push_back(std::move(colour));
    position_[e.dst] = static_cast<int>(gamma_.edges.size());
  }
  update_colour();
  check_invariants(next);
}

void P1Automaton::update_colour() {
  const std::size_t d = g_.dimension();
  std::size_t k = 0;
  for (std::size_t level = d; level >= 1 && k == 0; --level) {
    const auto& h = universe_.half_space(colour_[d - level]);
    for (std::size_t i = 0; i < weights_.size(); ++i)
      if (counters_[level - 1][i] >= bounds_.U[level - 1] && h.strict_part_contains(weights_[i])) {
        k = level;
        break;
      }
  }
  if (k == 0) return;

  const Subspace ambient = universe_.level_ambient(colour_, k);
  std::vector<WeightVector> violating;
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < weights_.size(); ++i)
    if (counters_[k - 1][i] >= bounds_.U[k - 1] && ambient.contains(weights_[i])) {
      violating.push_back(weights_[i]);
      idx.push_back(i);
    }

  auto reset_below = [&] {
    for (std::size_t level = 1; level < k; ++level)
      std::fill(counters_[level - 1].begin(), counters_[level - 1].end(), BigInt(0));
  };

  if (auto shifted = universe_.shift(colour_, k, violating)) {
    colour_ = std::move(*shifted);
    reset_below();
    ++checks_.shifts;
    events_.push_back({step_, EventKind::Shift, k, universe_.materialize(colour_).encoding()});
    return;
  }

  auto x = positive_kernel_solution(ColumnSystem(violating, ambient, bounds_.m));
  if (!x) {
    ++checks_.infeasible_cancellations;
    return;
  }
  for (std::size_t level = k; level <= d; ++level)
    for (std::size_t i = 0; i < idx.size(); ++i) {
      auto& c = counters_[level - 1][idx[i]];
      c -= bounds_.u[k - 1] * (*x)[i];
      if (c < 0) ++checks_.negative_counters;
    }
  for (std::size_t i = 0; i < weights_.size(); ++i)
    if (ambient.contains(weights_[i]) && counters_[k - 1][i] >= bounds_.U[k - 1])
      ++checks_.soft_bound_restore_failures;
  colour_ = universe_.cancel(colour_, k);
  reset_below();
  ++checks_.cancellations;
  events_.push_back({step_, EventKind::Cancel, k, universe_.materialize(colour_).encoding()});
}

void P1Automaton::check_invariants(const Configuration& next) {
  const std::size_t d = g_.dimension();
  WeightVector energy(d);
  for (EdgeId e : gamma_.edges) energy += g_.edge(e).weight;
  for (std::size_t i = 0; i < weights_.size(); ++i) energy += weights_[i] * counters_[d - 1][i];
  if (energy != next.level) ++checks_.energy_identity_failures;

  for (std::size_t k = 1; k <= d; ++k) {
    const Subspace ambient = universe_.level_ambient(colour_, k);
    const BigInt hard = bounds_.U[k - 1] + bounds_.u[k - 1];
    for (std::size_t i = 0; i < weights_.size(); ++i) {
      const auto& c = counters_[k - 1][i];
      if (c < 0) ++checks_.negative_counters;
      if (k < d && c > counters_[k][i]) ++checks_.non_monotone_counters;
      if (c >= hard && ambient.contains(weights_[i])) ++checks_.hard_bound_violations;
    }
  }
}

// --------------------------------------------------------------- simulate

SimulationReport simulate(const GameGraph& g, VertexId start, Strategy& s1, Strategy& s2, std::size_t steps,
                          std::uint64_t seed, const SimulationOptions& opts) {
  if (start >= g.num_vertices()) throw InputError("start vertex out of range");
  Configuration config{start, WeightVector(g.dimension())};
  s1.reset(config, seed * 2 + 1);
  s2.reset(config, seed * 2 + 2);

  SimulationReport rep;
  rep.max_norm = 0;
  if (opts.keep_trace) rep.trace.push_back(config);
  for (std::size_t t = 0; t < steps; ++t) {
    Strategy& mover = g.owner(config.vertex) == Player::One ? s1 : s2;
    EdgeId e = mover.choose(config);
    if (e >= g.num_edges() || g.edge(e).src != config.vertex)
      throw InputError(mover.name() + " chose an edge that does not leave " + g.vertex(config.vertex).name);
    Configuration next{g.edge(e).dst, config.level + g.edge(e).weight};
    s1.observe(e, next);
    s2.observe(e, next);
    config = std::move(next);
    rep.max_norm = std::max(rep.max_norm, norm(config.level));
    if (opts.keep_trace) rep.trace.push_back(config);
    ++rep.steps;
  }

  if (auto* a = dynamic_cast<P1Automaton*>(&s1)) {
    for (const auto& ev : a->events()) rep.events.push_back(to_string(ev));
    for (std::size_t k = 1; k <= g.dimension(); ++k)
      for (std::size_t i = 0; i < a->weights().size(); ++i)
        rep.final_counters.push_back({k, a->weights()[i], a->counters()[k - 1][i]});
    rep.checks = a->checks();
  }
  if (auto* l = dynamic_cast<P2Lift*>(&s2)) rep.max_p2_memory = l->max_memory();
  return rep;
}

}  // namespace mwg
