#include "mwg/game.hpp"

#include "mwg/errors.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

namespace mwg {

GameGraph::GameGraph(const GraphSpec& spec) : dimension_(spec.dimension) {
  vertices_ = spec.vertices;
  std::sort(vertices_.begin(), vertices_.end(),
            [](const Vertex& a, const Vertex& b) { return a.name < b.name; });
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (!index_.emplace(vertices_[i].name, static_cast<VertexId>(i)).second)
      throw InputError("duplicate vertex id '" + vertices_[i].name + "'");
  }

  std::map<std::tuple<VertexId, VertexId, WeightVector>, std::uint32_t> ordinals;
  edges_.reserve(spec.edges.size());
  for (const auto& e : spec.edges) {
    if (e.weight.dim() != dimension_)
      throw InputError("edge " + e.src + "->" + e.dst + " has weight of length " +
                       std::to_string(e.weight.dim()) + ", expected " +
                       std::to_string(dimension_));
    VertexId s = vertex_id(e.src);
    VertexId t = vertex_id(e.dst);
    std::uint32_t ord = ordinals[{s, t, e.weight}]++;
    edges_.push_back(Edge{s, t, e.weight, ord});
  }
  std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
    if (a.src != b.src) return a.src < b.src;
    if (a.dst != b.dst) return a.dst < b.dst;
    if (a.weight != b.weight) return a.weight < b.weight;
    return a.ordinal < b.ordinal;
  });

  out_.assign(vertices_.size(), {});
  in_.assign(vertices_.size(), {});
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    out_[edges_[i].src].push_back(static_cast<EdgeId>(i));
    in_[edges_[i].dst].push_back(static_cast<EdgeId>(i));
  }
}

std::optional<VertexId> GameGraph::find_vertex(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

VertexId GameGraph::vertex_id(const std::string& name) const {
  auto v = find_vertex(name);
  if (!v) throw InputError("unknown vertex '" + name + "'");
  return *v;
}

std::optional<EdgeId> GameGraph::find_edge(VertexId src, VertexId dst,
                                           const WeightVector& weight) const {
  for (EdgeId e : out_.at(src)) {
    if (edges_[e].dst == dst && edges_[e].weight == weight) return e;
  }
  return std::nullopt;
}

GraphSpec GameGraph::to_spec() const {
  GraphSpec spec;
  spec.dimension = dimension_;
  spec.vertices = vertices_;
  for (const auto& e : edges_)
    spec.edges.push_back({vertices_[e.src].name, vertices_[e.dst].name, e.weight});
  return spec;
}

BigInt edge_norm(const GameGraph& g) {
  BigInt best = 0;
  for (const auto& e : g.edges()) {
    BigInt n = norm(e.weight);
    if (n > best) best = n;
  }
  return best;
}

WeightVector total_weight(const Trace& path) {
  if (path.empty()) throw InputError("total weight of an empty path");
  return path.back().level - path.front().level;
}

WeightVector total_weight(const GameGraph& g, std::span<const EdgeId> edges) {
  WeightVector sum(g.dimension());
  for (EdgeId e : edges) sum += g.edge(e).weight;
  return sum;
}

bool is_path(const GameGraph& g, const Trace& path) {
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    WeightVector step = path[i + 1].level - path[i].level;
    if (!g.find_edge(path[i].vertex, path[i + 1].vertex, step)) return false;
  }
  return true;
}

namespace {

class CycleEnumerator {
 public:
  CycleEnumerator(const GameGraph& g, std::size_t cap) : g_(g), cap_(cap) {}

  CycleSet run() {
    on_path_.assign(g_.num_vertices(), false);
    for (VertexId s = 0; s < g_.num_vertices(); ++s) {
      root_ = s;
      vertices_ = {s};
      on_path_[s] = true;
      WeightVector zero(g_.dimension());
      dfs(s, zero);
      on_path_[s] = false;
    }
    std::set<WeightVector> distinct;
    for (const auto& c : result_.cycles)
      if (!c.weight.is_zero()) distinct.insert(c.weight);
    result_.weights.assign(distinct.begin(), distinct.end());
    return std::move(result_);
  }

 private:
  void dfs(VertexId v, const WeightVector& sum) {
    for (EdgeId e : g_.out_edges(v)) {
      const Edge& edge = g_.edge(e);
      if (edge.dst < root_) continue;
      WeightVector next = sum + edge.weight;
      edges_.push_back(e);
      if (edge.dst == root_) {
        if (result_.cycles.size() >= cap_)
          throw BudgetExceeded("simple cycle count exceeds cap " + std::to_string(cap_));
        auto verts = vertices_;
        verts.push_back(root_);
        result_.cycles.push_back(SimpleCycle{edges_, std::move(verts), next});
      } else if (!on_path_[edge.dst]) {
        on_path_[edge.dst] = true;
        vertices_.push_back(edge.dst);
        dfs(edge.dst, next);
        vertices_.pop_back();
        on_path_[edge.dst] = false;
      }
      edges_.pop_back();
    }
  }

  const GameGraph& g_;
  std::size_t cap_;
  VertexId root_ = 0;
  std::vector<bool> on_path_;
  std::vector<EdgeId> edges_;
  std::vector<VertexId> vertices_;
  CycleSet result_;
};

// Whether the subgraph induced by Player-2 vertices has a cycle.
std::optional<std::vector<VertexId>> find_player_two_cycle(const GameGraph& g) {
  const std::size_t n = g.num_vertices();
  std::vector<int> colour(n, 0);  // 0 white, 1 grey, 2 black
  std::vector<VertexId> stack;
  std::optional<std::vector<VertexId>> found;

  auto visit = [&](auto&& self, VertexId v) -> bool {
    colour[v] = 1;
    stack.push_back(v);
    for (EdgeId e : g.out_edges(v)) {
      VertexId w = g.edge(e).dst;
      if (g.owner(w) != Player::Two) continue;
      if (colour[w] == 1) {
        auto it = std::find(stack.begin(), stack.end(), w);
        found = std::vector<VertexId>(it, stack.end());
        return true;
      }
      if (colour[w] == 0 && self(self, w)) return true;
    }
    stack.pop_back();
    colour[v] = 2;
    return false;
  };
  for (VertexId v = 0; v < n; ++v) {
    if (g.owner(v) == Player::Two && colour[v] == 0 && visit(visit, v)) break;
  }
  return found;
}

}  // namespace

CycleSet enumerate_simple_cycles(const GameGraph& g, std::size_t cap) {
  return CycleEnumerator(g, cap).run();
}

std::string to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::NoOutgoingEdge: return "no outgoing edge";
    case ViolationKind::BadDimension: return "dimension < 1";
    case ViolationKind::ZeroEdgeNorm: return "edge norm is zero";
    case ViolationKind::PlayerTwoCycle: return "Player-2-only cycle";
  }
  return "unknown";
}

std::vector<Violation> validate(const GameGraph& g) {
  std::vector<Violation> out;
  if (g.dimension() < 1) out.push_back({ViolationKind::BadDimension, "dimension < 1"});
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    if (g.out_edges(v).empty())
      out.push_back({ViolationKind::NoOutgoingEdge,
                     "no outgoing edge at vertex '" + g.vertex(v).name + "'"});
  }
  if (edge_norm(g) == 0) out.push_back({ViolationKind::ZeroEdgeNorm, "edge norm is zero"});
  if (auto cyc = find_player_two_cycle(g)) {
    std::string names;
    for (VertexId v : *cyc) names += (names.empty() ? "" : " ") + g.vertex(v).name;
    out.push_back({ViolationKind::PlayerTwoCycle, "Player-2-only cycle through " + names});
  }
  return out;
}

GameGraph normalize_cycles(const GameGraph& g) {
  bool needed = false;
  for (const auto& e : g.edges())
    if (g.owner(e.src) == Player::Two && g.owner(e.dst) == Player::Two) needed = true;
  if (!needed) return g;

  GraphSpec spec;
  spec.dimension = g.dimension();
  spec.vertices = g.vertices();
  std::set<std::string> names;
  for (const auto& v : g.vertices()) names.insert(v.name);

  for (const auto& e : g.edges()) {
    const auto& src = g.vertex(e.src).name;
    const auto& dst = g.vertex(e.dst).name;
    if (g.owner(e.src) != Player::Two || g.owner(e.dst) != Player::Two) {
      spec.edges.push_back({src, dst, e.weight});
      continue;
    }
    std::string mid = src + ">" + dst;
    for (int k = 0; names.count(mid); ++k) mid = src + ">" + dst + "#" + std::to_string(k);
    names.insert(mid);
    spec.vertices.push_back({mid, Player::One});
    spec.edges.push_back({src, mid, e.weight});
    spec.edges.push_back({mid, dst, WeightVector(g.dimension())});
  }
  return GameGraph(spec);
}

std::optional<PoppedCycle> cycle_decomposition_step(Trace& stack, const Configuration& next) {
  auto it = std::find_if(stack.begin(), stack.end(),
                         [&](const Configuration& c) { return c.vertex == next.vertex; });
  if (it == stack.end()) {
    stack.push_back(next);
    return std::nullopt;
  }
  PoppedCycle cycle;
  cycle.configurations.assign(it, stack.end());
  cycle.configurations.push_back(next);
  cycle.weight = next.level - it->level;
  stack.erase(it + 1, stack.end());
  stack.back().level = next.level;
  return cycle;
}

}  // namespace mwg
