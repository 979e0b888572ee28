#include "mwg/oracle.hpp"

#include "mwg/errors.hpp"
#include "mwg/transforms.hpp"

#include <algorithm>
#include <random>

namespace mwg {

std::size_t tree_size(const SelfCoveringNode& n) {
  std::size_t s = 1;
  for (const auto& c : n.children) s += tree_size(c);
  return s;
}

std::size_t tree_leaves(const SelfCoveringNode& n) {
  if (n.children.empty()) return 1;
  std::size_t s = 0;
  for (const auto& c : n.children) s += tree_leaves(c);
  return s;
}

std::size_t tree_depth(const SelfCoveringNode& n) {
  std::size_t s = 0;
  for (const auto& c : n.children) s = std::max(s, 1 + tree_depth(c));
  return s;
}

namespace {

class CoverSearch {
 public:
  CoverSearch(const GameGraph& g, std::size_t budget) : g_(g), budget_(budget) {}

  std::size_t visited() const { return visited_; }

  // Runs f with the target of e pushed on the branch.
  template <class F>
  auto child(EdgeId e, F&& f) {
    const auto& edge = g_.edge(e);
    path_.push_back({edge.dst, path_.back().level + edge.weight});
    auto r = f();
    path_.pop_back();
    return r;
  }

  void reset(VertexId v) {
    path_.clear();
    path_.push_back({v, WeightVector(g_.dimension())});
  }

  std::optional<std::size_t> covered() const {
    const auto& cur = path_.back();
    for (std::size_t i = 0; i + 1 < path_.size(); ++i)
      if (path_[i].vertex == cur.vertex && dominates(cur.level, path_[i].level)) return i;
    return std::nullopt;
  }

  bool exists(std::size_t left) {
    tick();
    if (covered()) return true;
    if (left == 0) return false;
    const bool p1 = g_.owner(path_.back().vertex) == Player::One;
    for (EdgeId e : g_.out_edges(path_.back().vertex)) {
      bool r = child(e, [&] { return exists(left - 1); });
      if (p1 && r) return true;
      if (!p1 && !r) return false;
    }
    return !p1;
  }

  // Fewest nodes of a certificate of depth <= left.
  std::optional<std::size_t> min_size(std::size_t left) {
    tick();
    if (covered()) return 1;
    if (left == 0) return std::nullopt;
    const bool p1 = g_.owner(path_.back().vertex) == Player::One;
    std::optional<std::size_t> best;
    std::size_t total = 1;
    for (EdgeId e : g_.out_edges(path_.back().vertex)) {
      auto r = child(e, [&] { return min_size(left - 1); });
      if (p1) {
        if (r && (!best || *r < *best)) best = r;
      } else {
        if (!r) return std::nullopt;
        total += *r;
      }
    }
    if (p1) return best ? std::optional<std::size_t>(*best + 1) : std::nullopt;
    return total;
  }

  SelfCoveringNode build(std::size_t left, std::optional<EdgeId> via) {
    SelfCoveringNode node{path_.back().vertex, path_.back().level, via, {}, covered()};
    if (node.covers) return node;
    const bool p1 = g_.owner(node.vertex) == Player::One;
    if (p1) {
      std::optional<EdgeId> pick;
      std::optional<std::size_t> best;
      for (EdgeId e : g_.out_edges(node.vertex)) {
        auto r = child(e, [&] { return min_size(left - 1); });
        if (r && (!best || *r < *best)) {
          best = r;
          pick = e;
        }
      }
      if (!pick) throw Falsification("self-covering tree vanished while rebuilding");
      node.children.push_back(child(*pick, [&] { return build(left - 1, pick); }));
    } else {
      for (EdgeId e : g_.out_edges(node.vertex))
        node.children.push_back(child(e, [&] { return build(left - 1, e); }));
    }
    return node;
  }

 private:
  void tick() {
    if (++visited_ > budget_)
      throw BudgetExceeded("self-covering search budget of " + std::to_string(budget_) + " nodes exceeded");
  }

  const GameGraph& g_;
  std::size_t budget_;
  std::size_t visited_ = 0;
  std::vector<Configuration> path_;
};

}  // namespace

SelfCoveringResult self_covering_search(const GameGraph& g, VertexId start, std::size_t max_depth,
                                        std::size_t node_budget) {
  if (start >= g.num_vertices()) throw InputError("start vertex out of range");
  CoverSearch s(g, node_budget);
  SelfCoveringResult res;
  for (std::size_t depth = 0; depth <= max_depth; ++depth) {
    s.reset(start);
    if (!s.exists(depth)) continue;
    s.reset(start);
    res.win1 = true;
    res.depth = depth;
    res.tree = s.build(depth, std::nullopt);
    res.nodes_visited = s.visited();
    return res;
  }
  res.depth = max_depth;
  res.nodes_visited = s.visited();
  return res;
}

namespace {

// A vertex on a cycle through Player-2 vertices only, if any.
std::optional<VertexId> player2_cycle_vertex(const GraphSpec& spec) {
  const std::size_t n = spec.vertices.size();
  std::vector<std::vector<std::size_t>> adj(n);
  std::map<std::string, std::size_t> id;
  for (std::size_t i = 0; i < n; ++i) id[spec.vertices[i].name] = i;
  for (const auto& e : spec.edges) {
    auto s = id.at(e.src), t = id.at(e.dst);
    if (spec.vertices[s].owner == Player::Two && spec.vertices[t].owner == Player::Two) adj[s].push_back(t);
  }
  std::vector<int> state(n, 0);
  std::optional<VertexId> found;
  auto dfs = [&](auto&& self, std::size_t v) -> void {
    state[v] = 1;
    for (auto t : adj[v]) {
      if (found) return;
      if (state[t] == 1) {
        found = static_cast<VertexId>(t);
        return;
      }
      if (state[t] == 0) self(self, t);
    }
    state[v] = 2;
  };
  for (std::size_t v = 0; v < n && !found; ++v)
    if (state[v] == 0 && spec.vertices[v].owner == Player::Two) dfs(dfs, v);
  return found;
}

}  // namespace

GameGraph random_game(const RandomGameParams& p, std::uint64_t seed) {
  if (p.vertices < 1 || p.dimension < 1 || p.wmax < 1 || p.max_out_degree < 1)
    throw InputError("random_game: parameters must be positive");
  if (p.p1_fraction < 0 || p.p1_fraction > 1) throw InputError("random_game: p1_fraction outside [0,1]");
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution is_p1(p.p1_fraction);
  std::uniform_int_distribution<std::size_t> degree(1, p.max_out_degree);
  std::uniform_int_distribution<std::size_t> target(0, p.vertices - 1);
  std::uniform_int_distribution<long long> entry(-p.wmax, p.wmax);

  GraphSpec spec;
  spec.dimension = p.dimension;
  for (std::size_t i = 0; i < p.vertices; ++i)
    spec.vertices.push_back({"v" + std::to_string(i), is_p1(rng) ? Player::One : Player::Two});
  for (std::size_t i = 0; i < p.vertices; ++i) {
    const std::size_t deg = degree(rng);
    for (std::size_t k = 0; k < deg; ++k) {
      WeightVector w(p.dimension);
      for (std::size_t j = 0; j < p.dimension; ++j) w[j] = entry(rng);
      spec.edges.push_back({spec.vertices[i].name, spec.vertices[target(rng)].name, std::move(w)});
    }
  }
  bool nonzero = std::any_of(spec.edges.begin(), spec.edges.end(), [](const EdgeSpec& e) { return !e.weight.is_zero(); });
  if (!nonzero) spec.edges.front().weight[0] = p.wmax;
  while (auto v = player2_cycle_vertex(spec)) spec.vertices[*v].owner = Player::One;
  return GameGraph(spec);
}

CrossCheckReport cross_check(const GameGraph& g, VertexId start, const CrossCheckOptions& opts) {
  CrossCheckReport rep;
  const GameGraph lg = lossy(g);

  FcbOptions fo;
  fo.extract_strategy = false;
  fo.node_budget = opts.solve.node_budget;
  fo.enumeration_budget = opts.solve.enumeration_budget;
  auto fcb = solve_fcb(lg, start, fo);
  rep.fcb_lossy = fcb.winner;

  SolveOptions box = opts.solve;
  box.mode = SolveMode::Box;
  rep.box_lossy = solve_bounding(lg, start, box);

  rep.oracle = self_covering_search(g, start, opts.oracle_depth, opts.oracle_budget);

  auto flag = [&](const std::string& msg) {
    rep.contradiction = true;
    rep.notes.push_back("contradiction: " + msg);
  };
  if (rep.fcb_lossy == Player::Two && rep.oracle.win1) flag("fcb says Player 2 but a self-covering tree exists");
  if (rep.fcb_lossy == Player::Two && rep.box_lossy->winner == Player::One)
    flag("fcb says Player 2 but the box arena certifies Player 1");
  if (rep.fcb_lossy == Player::One && rep.box_lossy->winner == Player::Two && rep.box_lossy->certified)
    flag("fcb says Player 1 but the box arena certifies Player 2");
  if (!rep.contradiction) {
    if (rep.fcb_lossy == Player::One && !rep.oracle.win1)
      rep.notes.push_back("oracle inconclusive at depth " + std::to_string(opts.oracle_depth));
    if (rep.fcb_lossy == Player::One && rep.box_lossy->winner == Player::Two)
      rep.notes.push_back("box found no Player-1 strategy up to cap " + rep.box_lossy->cap_used->str());
  }
  return rep;
}

}  // namespace mwg
