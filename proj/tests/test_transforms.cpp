#include "mwg/energy.hpp"
#include "mwg/errors.hpp"
#include "mwg/io.hpp"
#include "mwg/oracle.hpp"
#include "mwg/transforms.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>

using namespace mwg;

namespace {

std::multiset<std::string> loops_at(const GameGraph& g, const std::string& v) {
  std::multiset<std::string> out;
  VertexId id = g.vertex_id(v);
  for (EdgeId e : g.out_edges(id))
    if (g.edge(e).dst == id) out.insert(to_string(g.edge(e).weight));
  return out;
}

// Sinks of later stages are renamed "_bot", and earlier sinks are copied as "bot#a".
bool is_sink_name(const std::string& name) { return name.find("bot") != std::string::npos; }

// Player 1 avoids every sink copy forever. Plain backward fixpoint.
bool avoids_sinks(const GameGraph& g, VertexId start) {
  std::vector<bool> lose(g.num_vertices(), false);
  for (VertexId v = 0; v < g.num_vertices(); ++v) lose[v] = is_sink_name(g.vertex(v).name);
  bool changed = true;
  while (changed) {
    changed = false;
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
      if (lose[v]) continue;
      auto out = g.out_edges(v);
      auto bad = [&](EdgeId e) { return static_cast<bool>(lose[g.edge(e).dst]); };
      bool now = g.owner(v) == Player::One ? std::all_of(out.begin(), out.end(), bad)
                                           : std::any_of(out.begin(), out.end(), bad);
      if (now) lose[v] = changed = true;
    }
  }
  return !lose[start];
}

}  // namespace

TEST_SUITE("graph-transforms") {
  TEST_CASE("lossy adds unit loss loops at Player-1 vertices") {
    auto g = oracle::load_named("balance").graph;
    auto l = lossy(g);
    CHECK(l.num_vertices() == 3);
    CHECK(l.num_edges() == g.num_edges() + 2);
    CHECK(loops_at(l, "v0") == std::multiset<std::string>{"(-1,0)", "(0,-1)"});
    CHECK(loops_at(l, "vL").empty());
    CHECK(loops_at(l, "vR").empty());

    auto d = lossy(oracle::load_named("drift").graph);
    CHECK(d.num_edges() == 8);
    CHECK(loops_at(d, "vL").size() == 3);
    CHECK(loops_at(d, "vR").size() == 3);

    auto p2 = oracle::make_graph(1, {{"a", 2}, {"b", 2}}, {{"a", "b", WeightVector{1}}, {"b", "b", WeightVector{1}}});
    CHECK(dump_game(lossy(p2)) == dump_game(p2));
  }

  TEST_CASE("capped product on one coordinate") {
    auto g = oracle::load_named("drift").graph;
    auto c = capped(g, 0, 0, 1);
    CHECK(c.num_vertices() == 1 + g.num_vertices() * 2);
    const std::string sink = capped_sink_name(g);
    auto step = [&](const std::string& from, const WeightVector& w) {
      VertexId v = c.vertex_id(from);
      for (EdgeId e : c.out_edges(v))
        if (c.edge(e).weight == w) return c.vertex(c.edge(e).dst).name;
      return std::string("?");
    };
    CHECK(step(capped_vertex_name("vL", 0), WeightVector{1, -1}) == capped_vertex_name("vL", 1));
    CHECK(step(capped_vertex_name("vL", 1), WeightVector{1, -1}) == sink);

    for (std::size_t fence : {0, 2})
      for (std::size_t cap : {0, 1, 3}) {
        auto cc = capped(g, 1, fence, cap);
        CHECK(cc.num_vertices() == 1 + g.num_vertices() * (fence + cap + 1));
        for (const auto& e : cc.edges())
          if (e.weight[1] == 0 && cc.vertex(e.src).name != sink) CHECK(cc.vertex(e.dst).name != sink);
      }
  }

  TEST_CASE("capped chain sizes and cap zero") {
    auto g = oracle::load_named("balance").graph;
    auto chain = capped_chain(g, WeightVector{2, 1}, 8);
    std::size_t n1 = 1 + 3 * (2 + 8 + 1);
    std::size_t n2 = 1 + n1 * (1 + 8 + 1);
    CHECK(chain.num_vertices() == n2);
    CHECK(chain.find_vertex(capped_chain_start("v0", 2)));

    auto z = capped(g, 0, 0, 0);
    for (const auto& e : z.edges())
      if (e.weight[0] > 0 && !is_sink_name(z.vertex(e.src).name)) CHECK(is_sink_name(z.vertex(e.dst).name));
  }

  TEST_CASE("capped chain with credit (2,1) and cap 8 is won by Player 1") {
    auto g = oracle::load_named("balance").graph;
    auto chain = capped_chain(g, WeightVector{2, 1}, 8);
    CHECK(avoids_sinks(chain, chain.vertex_id(capped_chain_start("v0", 2))));
    SolveOptions o;
    o.cap = BigInt(8);
    o.deepen = false;
    auto r = solve_given_credit(g, g.vertex_id("v0"), WeightVector{2, 1}, o);
    CHECK(r.winner == Player::One);
    CHECK(r.certified);
  }

  TEST_CASE("capped chain, box solver and explicit safety game agree") {
    RandomGameParams p;
    int checked = 0;
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      auto g = random_game(p, seed);
      for (long long cap : {1, 2, 3}) {
        WeightVector credit{static_cast<long long>(seed % 2), 1};
        auto chain = capped_chain(g, credit, cap);
        bool via_chain = avoids_sinks(chain, chain.vertex_id(capped_chain_start(g.vertex(0).name, 2)));
        auto box = solve_safety_box(lossy(g), 0, -credit, WeightVector{cap, cap});
        bool via_oracle = oracle::safety_player1_wins(lossy(g), 0, oracle::to_ll(-credit), {cap, cap});
        CHECK(via_chain == (box.winner() == Player::One));
        CHECK(via_oracle == via_chain);
        ++checked;
      }
    }
    CHECK(checked == 120);
  }

  TEST_CASE("capped arena budget") {
    auto g = oracle::load_named("balance").graph;
    CHECK_THROWS_AS(capped_chain(g, WeightVector{2, 1}, 1000, 1000), BudgetExceeded);
  }

  TEST_CASE("arena size bound against the recurrence") {
    CHECK(arena_size_bound(7, 3, WeightVector(std::vector<BigInt>{}), 0) == 7);
    CHECK(arena_size_bound(1, 1, WeightVector{0}, 1) == 1 + oracle::pow_by_squaring(4, 54));

    struct Tuple {
      long long nv, ne;
      std::vector<long long> credit;
    };
    std::vector<Tuple> tuples{{1, 1, {0}}, {3, 4, {2}}, {2, 1, {0, 0}}, {3, 4, {2, 1}}, {5, 3, {0, 4}}};
    for (const auto& t : tuples) {
      WeightVector c(std::vector<BigInt>(t.credit.begin(), t.credit.end()));
      CHECK(arena_size_bound(t.nv, t.ne, c, t.credit.size()) ==
            oracle::arena_recurrence(t.nv, t.ne, t.credit, t.credit.size()));
    }
    CHECK(arena_size_bound(2, 1, WeightVector{0}, 1) < arena_size_bound(3, 1, WeightVector{0}, 1));
    CHECK(arena_size_bound(2, 1, WeightVector{0}, 1) < arena_size_bound(2, 2, WeightVector{0}, 1));
    CHECK(arena_size_bound(2, 1, WeightVector{0}, 1) < arena_size_bound(2, 1, WeightVector{1}, 1));
  }
}
