#include "mwg/transforms.hpp"

#include "mwg/errors.hpp"

namespace mwg {

GameGraph lossy(const GameGraph& g) {
  GraphSpec spec = g.to_spec();
  for (const auto& v : g.vertices()) {
    if (v.owner != Player::One) continue;
    for (std::size_t i = 0; i < g.dimension(); ++i)
      spec.edges.push_back({v.name, v.name, WeightVector::unit(g.dimension(), i, -1)});
  }
  return GameGraph(spec);
}

std::string capped_vertex_name(const std::string& base, const BigInt& tracked) {
  return base + "#" + tracked.str();
}

std::string capped_sink_name(const GameGraph& g) {
  std::string name = "bot";
  while (g.find_vertex(name)) name = "_" + name;
  return name;
}

GameGraph capped(const GameGraph& g, std::size_t axis, const BigInt& fence, const BigInt& cap,
                 std::size_t arena_budget) {
  if (axis >= g.dimension()) throw InputError("capped: coordinate out of range");
  if (fence < 0 || cap < 0) throw InputError("capped: fence and cap must be nonnegative");
  if (g.dimension() < 1) throw InputError("capped: dimension must be positive");
  const BigInt width = fence + cap + 1;
  const BigInt count = 1 + BigInt(g.num_vertices()) * width;
  if (count > arena_budget)
    throw BudgetExceeded("cap-too-large: capped graph would have " + count.str() +
                         " vertices (budget " + std::to_string(arena_budget) + ")");

  GraphSpec spec;
  spec.dimension = g.dimension();
  const std::string sink = capped_sink_name(g);
  spec.vertices.push_back({sink, Player::One});
  spec.edges.push_back({sink, sink, WeightVector::unit(g.dimension(), 0, 1)});

  for (const auto& v : g.vertices()) {
    for (BigInt a = -fence; a <= cap; ++a) spec.vertices.push_back({capped_vertex_name(v.name, a), v.owner});
  }
  for (const auto& e : g.edges()) {
    const auto& src = g.vertex(e.src).name;
    const auto& dst = g.vertex(e.dst).name;
    for (BigInt a = -fence; a <= cap; ++a) {
      BigInt next = a + e.weight[axis];
      std::string target = (next < -fence || next > cap) ? sink : capped_vertex_name(dst, next);
      spec.edges.push_back({capped_vertex_name(src, a), std::move(target), e.weight});
    }
  }
  return GameGraph(spec);
}

GameGraph capped_chain(const GameGraph& g, const WeightVector& credit, const BigInt& cap,
                       std::size_t arena_budget) {
  if (credit.dim() != g.dimension()) throw InputError("credit has the wrong dimension");
  for (const auto& c : credit.entries())
    if (c < 0) throw InputError("credit must be componentwise nonnegative");
  GameGraph current = lossy(g);
  for (std::size_t i = 0; i < g.dimension(); ++i)
    current = capped(current, i, credit[i], cap, arena_budget);
  return current;
}

std::string capped_chain_start(const std::string& base, std::size_t dimension) {
  std::string name = base;
  for (std::size_t i = 0; i < dimension; ++i) name = capped_vertex_name(name, 0);
  return name;
}

BigInt arena_size_bound(const BigInt& nv, const BigInt& ne_norm, const WeightVector& credit,
                        std::size_t d) {
  if (credit.dim() < d) throw InputError("arena_size_bound: credit shorter than d");
  const unsigned long exponent = 2ul * (d + 2) * (d + 2) * (d + 2);
  BigInt a = nv;
  for (std::size_t i = 0; i < d; ++i) a = 1 + a * (credit[i] + ipow(4 * a * ne_norm, exponent));
  return a;
}

}  // namespace mwg
