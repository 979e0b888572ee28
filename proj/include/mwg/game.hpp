#pragma once

#include "mwg/vector.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace mwg {

enum class Player : std::uint8_t { One = 1, Two = 2 };

inline Player opponent(Player p) { return p == Player::One ? Player::Two : Player::One; }
inline int to_int(Player p) { return static_cast<int>(p); }

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;

struct Vertex {
  std::string name;
  Player owner;
};

// Edges form a multiset; `ordinal` separates parallel edges that share
// source, target and weight.
struct Edge {
  VertexId src;
  VertexId dst;
  WeightVector weight;
  std::uint32_t ordinal;
};

struct EdgeSpec {
  std::string src;
  std::string dst;
  WeightVector weight;
};

struct GraphSpec {
  std::size_t dimension = 0;
  std::vector<Vertex> vertices;
  std::vector<EdgeSpec> edges;
};

// A finite multi-weighted two-player arena. Vertices are stored sorted by
// name and edges by (src, dst, weight, ordinal), so that every traversal
// is reproducible. The constructor checks structure only (known vertex
// names, weight lengths); the game-theoretic standing assumptions are
// reported by validate().
class GameGraph {
 public:
  GameGraph() = default;
  explicit GameGraph(const GraphSpec& spec);

  std::size_t dimension() const { return dimension_; }
  std::size_t num_vertices() const { return vertices_.size(); }
  std::size_t num_edges() const { return edges_.size(); }

  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const Vertex& vertex(VertexId v) const { return vertices_.at(v); }
  const Edge& edge(EdgeId e) const { return edges_.at(e); }
  Player owner(VertexId v) const { return vertices_[v].owner; }
  std::span<const EdgeId> out_edges(VertexId v) const { return out_[v]; }
  std::span<const EdgeId> in_edges(VertexId v) const { return in_[v]; }

  std::optional<VertexId> find_vertex(const std::string& name) const;
  VertexId vertex_id(const std::string& name) const;  // throws InputError

  // First edge (lowest ordinal) from src to dst with the given weight.
  std::optional<EdgeId> find_edge(VertexId src, VertexId dst, const WeightVector& weight) const;

  GraphSpec to_spec() const;

 private:
  std::size_t dimension_ = 0;
  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeId>> out_;
  std::vector<std::vector<EdgeId>> in_;
  std::unordered_map<std::string, VertexId> index_;
};

// Maximum norm over all edge weights (0 for an edgeless graph).
BigInt edge_norm(const GameGraph& g);

struct Configuration {
  VertexId vertex;
  WeightVector level;

  friend bool operator==(const Configuration&, const Configuration&) = default;
};

// A path of configurations; plays start at the zero level.
using Trace = std::vector<Configuration>;

// Last level minus first level. Throws InputError on an empty trace.
WeightVector total_weight(const Trace& path);
// Sum of the weights of an edge sequence.
WeightVector total_weight(const GameGraph& g, std::span<const EdgeId> edges);

// Checks that consecutive configurations are joined by edges.
bool is_path(const GameGraph& g, const Trace& path);

struct SimpleCycle {
  std::vector<EdgeId> edges;
  std::vector<VertexId> vertices;  // v_0 ... v_n with v_0 == v_n
  WeightVector weight;
};

struct CycleSet {
  std::vector<SimpleCycle> cycles;
  // Distinct nonzero cycle weights, sorted lexicographically.
  std::vector<WeightVector> weights;
};

inline constexpr std::size_t kDefaultCycleCap = 1'000'000;

// All simple cycles, parallel edges giving distinct cycles. Each cycle is
// reported once, rooted at its smallest vertex. Throws BudgetExceeded
// once more than `cap` cycles exist.
CycleSet enumerate_simple_cycles(const GameGraph& g, std::size_t cap = kDefaultCycleCap);

enum class ViolationKind { NoOutgoingEdge, BadDimension, ZeroEdgeNorm, PlayerTwoCycle };

struct Violation {
  ViolationKind kind;
  std::string message;
};

std::string to_string(ViolationKind kind);

std::vector<Violation> validate(const GameGraph& g);

// Splits every edge between two Player-2 vertices with a fresh Player-1
// vertex that has a single zero-weight exit, so that every cycle visits
// a Player-1 vertex. Graphs without such edges are returned unchanged.
GameGraph normalize_cycles(const GameGraph& g);

struct PoppedCycle {
  Trace configurations;  // starts and ends at the same vertex
  WeightVector weight;
};

// One step of the cycle decomposition of a play. `stack` must be a simple
// path; if `next` revisits a vertex of the stack, the suffix from that
// occurrence is cut out and returned, and that occurrence takes the level
// of `next`; otherwise `next` is appended.
std::optional<PoppedCycle> cycle_decomposition_step(Trace& stack, const Configuration& next);

}  // namespace mwg
