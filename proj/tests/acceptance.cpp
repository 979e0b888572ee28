// Acceptance run: one PASS/FAIL line per criterion. With arguments, only
// the listed criteria run.

#include "mwg/energy.hpp"
#include "mwg/errors.hpp"
#include "mwg/first_cycle.hpp"
#include "mwg/halfspace.hpp"
#include "mwg/linalg.hpp"
#include "mwg/oracle.hpp"
#include "mwg/strategy.hpp"
#include "mwg/strategy_spec.hpp"
#include "mwg/transforms.hpp"
#include "oracles.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>

using namespace mwg;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail << "failed: ";
      else detail << "; ";
      detail << what;
      pass = false;
    }
  }
};

std::vector<GameGraph> named_corpus() {
  std::vector<GameGraph> c{oracle::load_named("balance").graph, oracle::load_named("drift").graph};
  c.push_back(lossy(c[0]));
  c.push_back(lossy(c[1]));
  return c;
}

std::vector<GameGraph> random_corpus(std::size_t n, long long wmax) {
  std::vector<GameGraph> c;
  RandomGameParams p;
  p.wmax = wmax;
  for (std::uint64_t seed = 0; c.size() < n; ++seed) {
    p.vertices = 1 + seed % 3;
    c.push_back(random_game(p, seed));
  }
  return c;
}

// ---------------------------------------------------------------- 1

void criterion1(Outcome& o) {
  auto g = oracle::load_named("balance").graph;
  VertexId v0 = g.vertex_id("v0");
  auto arb = solve_arbitrary_credit(g, v0);
  o.require(arb.winner == Player::One, "arbitrary credit winner");
  auto bnd = solve_bounding(g, v0);
  o.require(bnd.winner == Player::Two, "bounding winner");
  auto given = solve_given_credit(g, v0, WeightVector{2, 1});
  o.require(given.winner == Player::One && given.certified, "credit (2,1) winner");
  o.require(given.cap_used && *given.cap_used <= 16, "cap above 16");

  auto s1 = make_strategy(g, v0, Player::One, "threshold:1:0:v0>vL:v0>vR");
  auto s2 = make_strategy(g, v0, Player::Two, "counterless:vL>v0@-2,2;vR>v0@4,-3");
  auto sim = simulate(g, v0, *s1, *s2, 6, 0);
  auto at = [&](const char* v, long long x, long long y) { return Configuration{g.vertex_id(v), WeightVector{x, y}}; };
  Trace expected{at("v0", 0, 0), at("vL", 0, 0), at("v0", -2, 2), at("vR", -2, 2),
                at("v0", 2, -1), at("vL", 2, -1), at("v0", 0, 1)};
  o.require(sim.trace == expected, "simulated prefix");
  if (o.pass)
    o.detail << "arbitrary=1 bounding=2 credit(2,1)=1 at cap " << *given.cap_used << ", prefix matches";
}

// ---------------------------------------------------------------- 2

void criterion2(Outcome& o) {
  auto g = oracle::load_named("drift").graph;
  VertexId vl = g.vertex_id("vL");
  o.require(solve_arbitrary_credit(g, vl).winner == Player::Two, "arbitrary credit winner");
  auto fcb = solve_fcb(g, vl);
  o.require(fcb.winner == Player::Two, "first-cycle winner");
  std::string colour;
  if (fcb.strategy) {
    auto d = fcb_move(g, *fcb.strategy, FcbState{vl, {}});
    o.require(d.kind == FcbDecision::Kind::Colour, "strategy colour at vL");
    colour = (*fcb.universe)[d.value].encoding();
    o.require(oracle::first_cycle_winner(g, vl, *fcb.universe) == Player::Two, "oracle first-cycle winner");
  } else {
    o.require(false, "no strategy extracted");
  }
  auto sc = self_covering_search(g, vl, 10);
  o.require(!sc.win1, "self-covering certificate found");
  if (o.pass) o.detail << "arbitrary=2 fcb=2 colour at vL " << colour << ", oracle inconclusive at depth 10";
}

// ---------------------------------------------------------------- 3

void criterion3(Outcome& o) {
  RandomGameParams p;
  p.wmax = 1;
  std::size_t n = 0, contradictions = 0, agree = 0, p1 = 0;
  for (std::uint64_t seed = 0; n < 60; ++seed) {
    p.vertices = 1 + seed % 3;
    auto g = random_game(p, seed);
    if (edge_norm(g) != 1) continue;
    ++n;
    auto r = cross_check(g, 0);
    contradictions += r.contradiction;
    // Determinacy: the oracle minimax over the same universe gives the same single winner.
    FcbOptions fo;
    fo.universe = enumerate_perfect_halfspaces(1, 2);
    auto small = solve_fcb(lossy(g), 0, fo);
    agree += small.winner == oracle::first_cycle_winner(lossy(g), 0, *fo.universe);
    p1 += r.fcb_lossy == Player::One;
  }
  o.require(contradictions == 0, std::to_string(contradictions) + " contradictions");
  o.require(agree == n, "minimax disagreement");
  o.detail << n << " instances, " << contradictions << " contradictions, fcb winner 1 on " << p1;
}

// ---------------------------------------------------------------- 4

void criterion4(Outcome& o) {
  auto corpus = named_corpus();
  for (auto& g : random_corpus(50, 1)) corpus.push_back(std::move(g));
  for (auto& g : random_corpus(50, 3)) corpus.push_back(std::move(g));
  std::size_t cycles = 0, bad = 0;
  for (const auto& g : corpus) {
    BigInt bound = BigInt(g.num_vertices()) * edge_norm(g);
    for (const auto& w : oracle::cycle_weights(g)) {
      ++cycles;
      long long m = 0;
      for (long long x : w) m = std::max(m, std::llabs(x));
      bad += BigInt(m) > bound;
    }
  }
  o.require(bad == 0, std::to_string(bad) + " cycles above the bound");
  o.detail << corpus.size() << " games, " << cycles << " distinct cycle weights checked";
}

// ---------------------------------------------------------------- 5

void criterion5(Outcome& o) {
  std::size_t ambients = 0;
  for (long long m : {1, 2})
    for (std::size_t d : {1, 2, 3}) {
      HalfSpaceUniverse u(m, d);
      std::set<Subspace> seen;
      for (const auto& c : u.perfect())
        for (std::size_t level = d; level >= 1; --level) {
          Subspace amb = u.level_ambient(c, level);
          if (!seen.insert(amb).second) continue;
          ++ambients;
          o.require(BigInt(u.half_spaces_of(amb).size()) <= bound_L(level, m, d),
                    "count above bound in " + amb.encoding());
        }
      o.require(u.half_spaces_of(Subspace::whole(d)).size() == oracle::count_top_halfspaces(m, d),
                "top count differs from the cross-product count");
    }
  auto planes = enumerate_m_open_halfspaces(1, Subspace::whole(2));
  o.require(planes.size() == 8, "half-plane count");
  for (const auto& h : planes) o.require(enumerate_m_open_halfspaces(1, h.boundary()).size() == 2, "half-line count");
  auto perfect = enumerate_perfect_halfspaces(1, 2);
  o.require(perfect.size() == 16, "perfect count");
  o.detail << ambients << " ambient subspaces within bound; M=1,d=2: " << planes.size() << " half-planes, 2 half-lines each, "
           << perfect.size() << " perfect";
}

// ---------------------------------------------------------------- 6

void criterion6(Outcome& o) {
  auto corpus = named_corpus();
  for (auto& g : random_corpus(50, 2)) corpus.push_back(std::move(g));
  std::size_t systems = 0, combos = 0, planes = 0;
  for (const auto& g : corpus) {
    auto ws = enumerate_simple_cycles(g).weights;
    std::sort(ws.begin(), ws.end());
    ws.erase(std::unique(ws.begin(), ws.end()), ws.end());
    if (ws.size() > 10) ws.resize(10);
    BigInt m = colour_norm(g);
    for (std::size_t mask = 1; mask < (std::size_t{1} << ws.size()); ++mask) {
      std::vector<WeightVector> cols;
      for (std::size_t i = 0; i < ws.size(); ++i)
        if (mask >> i & 1) cols.push_back(ws[i]);
      ++systems;
      ColumnSystem s(cols, m);
      auto alt = alternatives(s);
      bool positive = oracle::positive_kernel_exists(cols);
      if (auto* c = std::get_if<PositiveCombination>(&alt)) {
        ++combos;
        WeightVector sum(g.dimension());
        bool pos = true;
        for (std::size_t i = 0; i < cols.size(); ++i) {
          sum += cols[i] * c->coefficients[i];
          pos = pos && c->coefficients[i] >= 1 && c->coefficients[i] <= bound_S(m, s.rank());
        }
        o.require(positive && pos && sum == WeightVector(g.dimension()), "bad combination for " + to_string(cols[0]));
      } else {
        ++planes;
        const auto& h = std::get<ClosedHalfSpace>(alt).half_space;
        bool inside = std::all_of(cols.begin(), cols.end(), [&](const WeightVector& w) { return h.closure_contains(w); });
        bool strict = std::any_of(cols.begin(), cols.end(), [&](const WeightVector& w) { return h.contains(w); });
        auto listed = enumerate_m_open_halfspaces(m, s.ambient());
        bool generated = std::find(listed.begin(), listed.end(), h) != listed.end();
        o.require(!positive && inside && strict && generated, "bad half-space " + h.encoding());
      }
    }
  }
  o.detail << systems << " column systems: " << combos << " positive combinations, " << planes << " closed half-spaces";
}

// ---------------------------------------------------------------- 7

struct RunSummary {
  std::size_t identity = 0, negative = 0;
  AutomatonChecks checks;
};

WeightVector memory_level(const GameGraph& g, const P1Automaton& a) {
  WeightVector level = total_weight(g, a.gamma().edges);
  const auto& top = a.counters().back();
  for (std::size_t i = 0; i < a.weights().size(); ++i) level += a.weights()[i] * top[i];
  return level;
}

RunSummary drive(const GameGraph& g, P1Automaton& a, Strategy& adversary, std::size_t steps, std::uint64_t seed) {
  RunSummary s;
  Configuration c{0, WeightVector(g.dimension())};
  a.reset(c, seed);
  adversary.reset(c, seed);
  for (std::size_t t = 0; t < steps; ++t) {
    EdgeId e = g.owner(c.vertex) == Player::One ? a.choose(c) : adversary.choose(c);
    c = Configuration{g.edge(e).dst, c.level + g.edge(e).weight};
    a.observe(e, c);
    adversary.observe(e, c);
    s.identity += memory_level(g, a) != c.level;
    for (const auto& row : a.counters())
      for (const auto& v : row) s.negative += v < 0;
  }
  s.checks = a.checks();
  return s;
}

void criterion7(Outcome& o) {
  auto check = [&](const std::string& label, const RunSummary& s) {
    o.require(s.identity == 0, label + ": energy identity");
    o.require(s.negative == 0 && s.checks.negative_counters == 0, label + ": negative counter");
    o.require(s.checks.clean(), label + ": automaton self-check");
  };
  std::size_t shifts = 0, cancels = 0, steps = 0;
  auto tally = [&](const RunSummary& s) {
    shifts += s.checks.shifts;
    cancels += s.checks.cancellations;
    steps += s.checks.steps;
  };

  auto balance = lossy(oracle::load_named("balance").graph);
  auto fcb = solve_fcb(balance, 0);
  o.require(fcb.winner == Player::One, "lossy balance first-cycle winner");
  BigInt q = kernel_scale(balance);
  std::vector<std::pair<std::string, std::unique_ptr<Strategy>>> adversaries;
  for (std::uint64_t seed = 1; seed <= 4; ++seed) adversaries.emplace_back("random", std::make_unique<RandomStrategy>(balance));
  for (const char* l : {"vL>v0@-2,2", "vL>v0@-1,3"})
    for (const char* r : {"vR>v0@2,-1", "vR>v0@4,-3"})
      adversaries.emplace_back(std::string("counterless ") + l + ";" + r,
                               make_strategy(balance, 0, Player::Two, std::string("counterless:") + l + ";" + r));
  std::uint64_t seed = 0;
  for (auto& [label, adv] : adversaries) {
    P1Automaton scaled(balance, std::make_unique<FcbPolicy>(*fcb.strategy), scaled_bounds(balance, q));
    auto s = drive(balance, scaled, *adv, 200000, ++seed);
    check("lossy balance q=" + q.str() + " vs " + label, s);
    tally(s);
  }
  {
    P1Automaton exact(balance, std::make_unique<FcbPolicy>(*fcb.strategy), bounds(balance));
    RandomStrategy adv(balance);
    auto s = drive(balance, exact, adv, 10000, 99);
    check("lossy balance at true bounds", s);
    o.require(s.checks.hard_bound_violations == 0, "hard bound at true bounds");
    tally(s);
  }

  auto drift = lossy(oracle::load_named("drift").graph);
  BigInt qd = std::max(BigInt(2), kernel_scale(drift));
  std::size_t hard = 0;
  {
    // Player 1 has no winning first-cycle strategy here, so the greedy
    // policy stands in; the adversary never moves (no Player-2 vertex).
    P1Automaton greedy(drift, std::make_unique<GreedyPolicy>(), scaled_bounds(drift, qd));
    RandomStrategy adv(drift);
    auto s = drive(drift, greedy, adv, 20000, 7);
    check("lossy drift q=" + qd.str(), s);
    hard = s.checks.hard_bound_violations;
    tally(s);
  }
  o.detail << steps << " steps, " << shifts << " shifts, " << cancels << " cancellations; balance base q=" << q
           << "; hard-bound hits on drift under the greedy policy: " << hard;
}

// ---------------------------------------------------------------- 8

void criterion8(Outcome& o) {
  auto g = oracle::load_named("balance").graph;
  VertexId v0 = g.vertex_id("v0");
  auto s1 = make_strategy(g, v0, Player::One, "threshold:1:0:v0>vL:v0>vR");
  auto s2 = make_strategy(g, v0, Player::Two, "lift");
  auto r = simulate(g, v0, *s1, *s2, 1000, 0);
  o.require(r.max_norm >= 50, "max norm " + r.max_norm.str());
  o.require(r.max_p2_memory <= g.num_vertices(), "lift memory above |V|");
  std::optional<BigInt> last;
  std::size_t cycles = 0;
  for (const auto& c : r.trace) {
    if (c.vertex != v0) continue;
    BigInt sum = c.level[0] + c.level[1];
    if (last) {
      o.require(sum >= *last + 1, "coordinate sum did not grow at step");
      ++cycles;
    }
    last = sum;
  }
  o.detail << "max norm " << r.max_norm << " after 1000 steps, " << cycles << " popped cycles each adding >= 1";
}

// ---------------------------------------------------------------- 9

void criterion9(Outcome& o) {
  auto b = bounds(oracle::load_named("balance").graph);
  o.require(b.B == oracle::pow_by_squaring(48, 128), "B differs from 48^128");
  struct Tuple {
    long long nv, ne;
    std::vector<long long> credit;
  };
  std::vector<Tuple> tuples{{1, 1, {0}}, {3, 4, {2}}, {2, 1, {0, 0}}, {3, 4, {2, 1}}, {5, 3, {0, 4}}};
  for (const auto& t : tuples) {
    WeightVector c(std::vector<BigInt>(t.credit.begin(), t.credit.end()));
    o.require(arena_size_bound(t.nv, t.ne, c, t.credit.size()) ==
                  oracle::arena_recurrence(t.nv, t.ne, t.credit, t.credit.size()),
              "arena bound for |V|=" + std::to_string(t.nv));
  }
  o.detail << "B has " << b.B.str().size() << " digits; " << tuples.size() << " recurrence tuples match";
}

// ---------------------------------------------------------------- 10

void criterion10(Outcome& o) {
  auto g = oracle::load_named("balance").graph;
  VertexId v0 = g.vertex_id("v0");
  auto r = pareto_limit(g, v0, 4);
  o.require(r.complete, "uncertified probe");
  const auto& a = r.antichain;
  auto leq = [](const WeightVector& x, const WeightVector& y) {
    for (std::size_t i = 0; i < x.dim(); ++i)
      if (x[i] > y[i]) return false;
    return true;
  };
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      if (i != j) o.require(!leq(a[i], a[j]), "not an antichain");
  o.require(std::any_of(a.begin(), a.end(), [&](const WeightVector& x) { return leq(x, WeightVector{2, 1}); }),
            "(2,1) not covered");
  for (const auto& x : a) {
    auto c = oracle::to_ll(x);
    o.require(oracle::credit_cover(g, v0, c, 14), "member " + to_string(x) + " has no covering tree");
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] == 0) continue;
      auto dec = c;
      --dec[i];
      o.require(oracle::player2_forces_negative(g, v0, dec, 20), "decrement of " + to_string(x) + " not refuted");
    }
  }
  auto drift = oracle::load_named("drift").graph;
  auto rd = pareto_limit(drift, drift.vertex_id("vL"), 4);
  o.require(rd.antichain.empty(), "drift antichain not empty");
  o.detail << "balance:";
  for (const auto& x : a) o.detail << " " << to_string(x);
  o.detail << " (" << r.probes << " probes); drift: empty";
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<void(Outcome&)>> criteria{criterion1, criterion2, criterion3, criterion4, criterion5,
                                                            criterion6, criterion7, criterion8, criterion9, criterion10};
  std::vector<std::size_t> selected;
  for (int i = 1; i < argc; ++i) {
    std::size_t n = std::stoul(argv[i]);
    if (n < 1 || n > criteria.size()) {
      std::cerr << "no criterion " << argv[i] << "\n";
      return 2;
    }
    selected.push_back(n);
  }
  if (selected.empty())
    for (std::size_t n = 1; n <= criteria.size(); ++n) selected.push_back(n);

  bool all = true;
  for (std::size_t n : selected) {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[n - 1](o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << "criterion " << n << ": " << (o.pass ? "PASS" : "FAIL") << " (" << o.detail.str() << "; "
              << std::fixed << std::setprecision(2) << secs << " s)" << std::endl;
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
