#include "mwg/energy.hpp"

#include "mwg/errors.hpp"
#include "mwg/strategy.hpp"

#include <algorithm>
#include <deque>
#include <limits>

namespace mwg {

namespace {

constexpr std::int64_t kSaturate = std::int64_t{1} << 62;

std::int64_t saturate(const BigInt& v) {
  if (v > kSaturate) return kSaturate;
  if (v < -kSaturate) return -kSaturate;
  return v.convert_to<std::int64_t>();
}

constexpr std::int64_t kLoseExit = -1;
constexpr std::int64_t kSafeExit = -2;

}  // namespace

bool BoxSolution::in_box(const WeightVector& level) const {
  for (std::size_t i = 0; i < level.dim(); ++i)
    if (level[i] < lower_[i] || level[i] > upper_[i]) return false;
  return true;
}

std::size_t BoxSolution::index(const Configuration& c) const {
  std::size_t idx = c.vertex;
  for (std::size_t i = 0; i < lo_.size(); ++i)
    idx = idx * static_cast<std::size_t>(width_[i]) + static_cast<std::size_t>(saturate(c.level[i]) - lo_[i]);
  return idx;
}

bool BoxSolution::player1_wins(const Configuration& c) const {
  return in_box(c.level) && !attracted_[index(c)];
}

EdgeId BoxSolution::choose(const Configuration& c) const {
  if (!in_box(c.level)) throw UndefinedState("configuration outside the box");
  const auto out = g_->out_edges(c.vertex);
  const bool p1 = g_->owner(c.vertex) == Player::One;
  std::optional<EdgeId> best;
  std::uint32_t best_rank = std::numeric_limits<std::uint32_t>::max();
  for (EdgeId e : out) {
    WeightVector next = c.level + g_->edge(e).weight;
    bool lose_exit = false, safe_exit = false;
    for (std::size_t i = 0; i < next.dim(); ++i) {
      if (next[i] < lower_[i]) lose_exit = true;
      else if (next[i] > upper_[i]) (upper_exit_ == UpperExit::Lose ? lose_exit : safe_exit) = true;
    }
    if (lose_exit) {
      if (!p1) return e;
      continue;
    }
    if (safe_exit) {
      if (p1) return e;
      continue;
    }
    const std::size_t t = index({g_->edge(e).dst, next});
    if (p1) {
      if (!attracted_[t]) return e;
    } else if (attracted_[t] && rank_[t] < best_rank) {
      best = e;
      best_rank = rank_[t];
    }
  }
  if (best) return *best;
  // The mover is losing here; any edge will do.
  return out.front();
}

BoxSolution solve_safety_box(const GameGraph& g, VertexId start, const WeightVector& lower,
                             const WeightVector& upper, std::size_t arena_budget, UpperExit upper_exit) {
  const std::size_t d = g.dimension();
  if (lower.dim() != d || upper.dim() != d) throw InputError("box bounds have the wrong dimension");
  if (start >= g.num_vertices()) throw InputError("start vertex out of range");
  BigInt count = g.num_vertices();
  for (std::size_t i = 0; i < d; ++i) {
    if (lower[i] > 0 || upper[i] < 0) throw InputError("box must contain the zero level");
    count *= upper[i] - lower[i] + 1;
  }
  if (count > arena_budget)
    throw BudgetExceeded("box arena has " + count.str() + " states (budget " + std::to_string(arena_budget) + ")");

  BoxSolution sol;
  sol.g_ = &g;
  sol.lower_ = lower;
  sol.upper_ = upper;
  sol.upper_exit_ = upper_exit;
  for (std::size_t i = 0; i < d; ++i) {
    sol.lo_.push_back(lower[i].convert_to<std::int64_t>());
    sol.width_.push_back((upper[i] - lower[i] + 1).convert_to<std::int64_t>());
  }
  const std::size_t n = count.convert_to<std::size_t>();
  const std::size_t per_vertex = n / g.num_vertices();

  std::vector<std::vector<std::int64_t>> weights;
  for (const auto& e : g.edges()) {
    std::vector<std::int64_t> w;
    for (std::size_t i = 0; i < d; ++i) w.push_back(saturate(e.weight[i]));
    weights.push_back(std::move(w));
  }

  // Successor of state (v, offsets) along edge e.
  std::vector<std::int64_t> offs(d);
  auto target = [&](EdgeId e) -> std::int64_t {
    std::int64_t idx = g.edge(e).dst;
    bool safe = false;
    for (std::size_t i = 0; i < d; ++i) {
      std::int64_t o = offs[i] + weights[e][i];
      if (o < 0) return kLoseExit;
      if (o >= sol.width_[i]) {
        if (upper_exit == UpperExit::Lose) return kLoseExit;
        safe = true;
      }
      idx = idx * sol.width_[i] + o;
    }
    return safe ? kSafeExit : idx;
  };
  auto for_each_state = [&](auto&& fn) {
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
      std::fill(offs.begin(), offs.end(), 0);
      for (std::size_t k = 0; k < per_vertex; ++k) {
        fn(v, v * per_vertex + k);
        for (std::size_t i = d; i-- > 0;) {
          if (++offs[i] < sol.width_[i]) break;
          offs[i] = 0;
        }
      }
    }
  };

  // Reverse edges in CSR form; exits seed the attractor.
  std::vector<std::uint32_t> indeg(n + 1, 0), remaining(n, 0);
  std::vector<std::uint8_t> attracted(n, 0);
  std::vector<std::uint32_t> rank(n, 0);
  std::deque<std::size_t> queue;
  for_each_state([&](VertexId v, std::size_t s) {
    bool p2 = g.owner(v) == Player::Two;
    std::uint32_t live = 0;
    bool lose = false;
    for (EdgeId e : g.out_edges(v)) {
      auto t = target(e);
      if (t >= 0) {
        ++indeg[static_cast<std::size_t>(t)];
        ++live;
      } else if (t == kLoseExit) {
        lose = true;
      } else {
        ++live;  // a safe exit is never attracted
      }
    }
    remaining[s] = live;
    if ((p2 && lose) || (!p2 && live == 0)) {
      attracted[s] = 1;
      rank[s] = 1;
      queue.push_back(s);
    }
  });
  std::vector<std::size_t> start_of(n + 1, 0);
  for (std::size_t s = 0; s < n; ++s) start_of[s + 1] = start_of[s] + indeg[s];
  std::vector<std::uint32_t> preds(start_of[n]);
  std::vector<std::size_t> fill(start_of.begin(), start_of.end() - 1);
  for_each_state([&](VertexId v, std::size_t s) {
    for (EdgeId e : g.out_edges(v)) {
      auto t = target(e);
      if (t >= 0) preds[fill[static_cast<std::size_t>(t)]++] = static_cast<std::uint32_t>(s);
    }
  });

  while (!queue.empty()) {
    std::size_t t = queue.front();
    queue.pop_front();
    for (std::size_t p = start_of[t]; p < start_of[t + 1]; ++p) {
      std::size_t s = preds[p];
      if (attracted[s]) continue;
      const bool p2 = g.owner(static_cast<VertexId>(s / per_vertex)) == Player::Two;
      if (p2 || --remaining[s] == 0) {
        attracted[s] = 1;
        rank[s] = rank[t] + 1;
        queue.push_back(s);
      }
    }
  }

  sol.attracted_ = std::move(attracted);
  sol.rank_ = std::move(rank);
  sol.winner_ = sol.player1_wins({start, WeightVector(d)}) ? Player::One : Player::Two;
  return sol;
}

std::string to_string(SolveMode m) {
  switch (m) {
    case SolveMode::Fcb: return "fcb";
    case SolveMode::Box: return "box";
    case SolveMode::Auto: return "auto";
  }
  return "?";
}

SolveMode parse_mode(const std::string& s) {
  if (s == "fcb") return SolveMode::Fcb;
  if (s == "box") return SolveMode::Box;
  if (s == "auto") return SolveMode::Auto;
  throw InputError("unknown solve mode '" + s + "'");
}

std::vector<BigInt> cap_schedule(const GameGraph& g, const SolveOptions& opts) {
  if (opts.cap && *opts.cap < 0) throw InputError("cap must be nonnegative");
  if (opts.cap && !opts.deepen) return {*opts.cap};
  const BigInt last = opts.cap ? *opts.cap : opts.max_cap;
  std::vector<BigInt> caps;
  BigInt c = std::max(BigInt(1), colour_norm(g));
  for (; c < last; c *= 2) caps.push_back(c);
  caps.push_back(last);
  return caps;
}

namespace {

WeightVector constant(std::size_t d, const BigInt& c) {
  WeightVector v(d);
  for (std::size_t i = 0; i < d; ++i) v[i] = c;
  return v;
}

BigInt box_states(const GameGraph& g, const WeightVector& lower, const WeightVector& upper) {
  BigInt n = g.num_vertices();
  for (std::size_t i = 0; i < g.dimension(); ++i) n *= upper[i] - lower[i] + 1;
  return n;
}

SolveResult solve_fcb_mode(const GameGraph& g, VertexId start, const SolveOptions& opts) {
  FcbOptions fo;
  fo.node_budget = opts.node_budget;
  fo.enumeration_budget = opts.enumeration_budget;
  fo.extract_strategy = opts.extract_strategy;
  SolveResult r;
  r.fcb = solve_fcb(g, start, fo);
  r.winner = r.fcb->winner;
  r.certified = true;
  r.method = "fcb";
  r.witness = "first-cycle game over " + std::to_string(r.fcb->universe->size()) + " colours (M=" +
              r.fcb->m.str() + "), " + std::to_string(r.fcb->nodes) + " nodes";
  return r;
}

// Deepening over caps; `lower_for` gives the box floor.
template <class Lower>
SolveResult deepen_box(const GameGraph& g, VertexId start, const SolveOptions& opts, Lower lower_for,
                       bool optimistic_check) {
  const std::size_t d = g.dimension();
  const BigInt big_b = bounds(g).B;
  SolveResult r;
  r.method = "box";
  bool tried = false;
  for (const auto& c : cap_schedule(g, opts)) {
    WeightVector lower = lower_for(c);
    WeightVector upper = constant(d, c);
    if (box_states(g, lower, upper) > opts.arena_budget) break;
    tried = true;
    r.cap_used = c;
    auto sol = solve_safety_box(g, start, lower, upper, opts.arena_budget);
    if (sol.winner() == Player::One) {
      r.winner = Player::One;
      r.certified = true;
      r.witness = "positional strategy keeping levels in [" + to_string(lower) + ", " + to_string(upper) + "]";
      return r;
    }
    if (optimistic_check) {
      auto opt = solve_safety_box(g, start, lower, upper, opts.arena_budget, UpperExit::Win);
      if (opt.winner() == Player::Two) {
        r.winner = Player::Two;
        r.certified = true;
        r.witness = "Player 2 forces a level below the credit even when overflow at cap " + c.str() + " counts as safe";
        return r;
      }
    }
    if (c >= big_b) {
      r.winner = Player::Two;
      r.certified = true;
      r.witness = "Player 2 wins the box at a cap no smaller than B";
      return r;
    }
  }
  if (!tried) throw BudgetExceeded("cap-too-large: no cap of the schedule fits the arena budget");
  r.winner = Player::Two;
  r.certified = false;
  r.witness = "Player 1 found no strategy up to cap " + r.cap_used->str();
  return r;
}

}  // namespace

SolveResult solve_bounding(const GameGraph& g, VertexId start, const SolveOptions& opts) {
  if (opts.mode == SolveMode::Fcb) return solve_fcb_mode(g, start, opts);
  if (opts.mode == SolveMode::Auto) {
    try {
      return solve_fcb_mode(g, start, opts);
    } catch (const BudgetExceeded&) {
      // fall through to the box route
    }
  }
  const std::size_t d = g.dimension();
  return deepen_box(g, start, opts, [d](const BigInt& c) { return constant(d, -c); }, false);
}

SolveResult solve_arbitrary_credit(const GameGraph& g, VertexId start, const SolveOptions& opts) {
  return solve_bounding(lossy(g), start, opts);
}

SolveResult solve_given_credit(const GameGraph& g, VertexId start, const WeightVector& credit,
                               const SolveOptions& opts) {
  if (credit.dim() != g.dimension()) throw InputError("credit has the wrong dimension");
  for (const auto& c : credit.entries())
    if (c < 0) throw InputError("credit must be componentwise nonnegative");
  const GameGraph lg = lossy(g);
  const WeightVector floor = -credit;
  return deepen_box(lg, start, opts, [&](const BigInt&) { return floor; }, opts.certify_player2);
}

ParetoResult pareto_limit(const GameGraph& g, VertexId start, const BigInt& search_norm, const SolveOptions& opts) {
  if (search_norm < 0) throw InputError("search norm must be nonnegative");
  const std::size_t d = g.dimension();
  const auto n = search_norm.convert_to<long long>();
  ParetoResult res;
  // Credits by increasing coordinate sum, so every member found is minimal.
  for (long long sum = 0; sum <= n * static_cast<long long>(d); ++sum) {
    std::vector<long long> c(d, 0);
    auto visit = [&](auto&& self, std::size_t i, long long left) -> void {
      if (i + 1 == d) {
        if (left > n) return;
        c[i] = left;
        WeightVector credit(d);
        for (std::size_t j = 0; j < d; ++j) credit[j] = c[j];
        for (const auto& m : res.antichain)
          if (dominates(credit, m)) return;
        ++res.probes;
        auto r = solve_given_credit(g, start, credit, opts);
        if (r.winner == Player::One)
          res.antichain.push_back(credit);
        else if (!r.certified)
          res.complete = false;
        return;
      }
      for (long long x = 0; x <= std::min(n, left); ++x) {
        c[i] = x;
        self(self, i + 1, left - x);
      }
    };
    visit(visit, 0, sum);
  }
  return res;
}

}  // namespace mwg
