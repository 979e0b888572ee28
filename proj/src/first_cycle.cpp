#include "mwg/first_cycle.hpp"

#include "mwg/errors.hpp"

#include <algorithm>
#include <unordered_map>

namespace mwg {

std::vector<VertexId> path_vertices(const GameGraph& g, const FcbState& s) {
  std::vector<VertexId> vs{s.start};
  for (const auto& st : s.steps) {
    const auto& e = g.edge(st.edge);
    if (e.src != vs.back()) throw InputError("coloured path is not connected");
    vs.push_back(e.dst);
  }
  return vs;
}

VertexId current_vertex(const GameGraph& g, const FcbState& s) {
  return s.steps.empty() ? s.start : g.edge(s.steps.back().edge).dst;
}

std::vector<std::int32_t> encode(const FcbState& s) {
  std::vector<std::int32_t> key{static_cast<std::int32_t>(s.start)};
  for (const auto& st : s.steps) {
    key.push_back(static_cast<std::int32_t>(st.edge));
    key.push_back(st.colour ? static_cast<std::int32_t>(*st.colour) : -1);
  }
  return key;
}

Player evaluate_cycle(const WeightVector& weight, std::span<const PerfectHalfSpace> colours) {
  if (colours.empty()) return Player::One;
  return lca(colours).contains(weight) ? Player::Two : Player::One;
}

Player evaluate_cycle(const GameGraph& g, std::span<const ColouredStep> cycle, const Universe& universe) {
  if (cycle.empty()) throw InputError("evaluate_cycle: empty cycle");
  WeightVector w(g.dimension());
  std::vector<PerfectHalfSpace> colours;
  for (const auto& st : cycle) {
    w += g.edge(st.edge).weight;
    if (st.colour) colours.push_back(universe.at(*st.colour));
  }
  return evaluate_cycle(w, colours);
}

const FcbDecision* FcbStrategy::find(const std::vector<std::int32_t>& key) const {
  auto it = table_.find(key);
  return it == table_.end() ? nullptr : &it->second;
}

std::optional<ColourId> FcbStrategy::colour_id(const PerfectHalfSpace& colour) const {
  if (by_encoding_.empty())
    for (ColourId i = 0; i < universe_->size(); ++i) by_encoding_.emplace((*universe_)[i].encoding(), i);
  auto it = by_encoding_.find(colour.encoding());
  if (it == by_encoding_.end()) return std::nullopt;
  return it->second;
}

BigInt colour_norm(const GameGraph& g) { return BigInt(g.num_vertices()) * edge_norm(g); }

namespace {

constexpr std::uint8_t kNone = 0xff;

class Search {
 public:
  Search(const GameGraph& g, const Universe& universe, std::size_t budget)
      : g_(g), universe_(universe), budget_(budget), d_(g.dimension()),
        pos_(g.num_vertices(), -1) {
    // Per-level ids so that common chain prefixes are integer comparisons.
    std::map<std::string, int> ids;
    levels_.resize(universe.size());
    for (std::size_t c = 0; c < universe.size(); ++c) {
      if (universe[c].ambient_dim() != d_ || !universe[c].is_perfect())
        throw InputError("colour universe holds a non-perfect or wrongly sized half-space");
      for (const auto& h : universe[c].chain())
        levels_[c].push_back(ids.emplace(h.encoding(), static_cast<int>(ids.size())).first->second);
    }
  }

  std::size_t nodes() const { return nodes_; }

  void reset(VertexId start) {
    std::fill(pos_.begin(), pos_.end(), -1);
    verts_ = {start};
    pos_[start] = 0;
    edges_.clear();
    colours_.clear();
    prefix_ = {WeightVector(d_)};
    lca_ = {};
    lca_stack_.clear();
    last_stack_.clear();
    last_ = -1;
  }

  VertexId current() const { return verts_.back(); }
  const std::vector<EdgeId>& edges() const { return edges_; }
  const std::vector<std::int32_t>& colours() const { return colours_; }

  // Position the edge's target already occupies on the path.
  std::optional<std::size_t> closes(EdgeId e) const {
    auto p = pos_[g_.edge(e).dst];
    if (p < 0) return std::nullopt;
    return static_cast<std::size_t>(p);
  }

  // Outcome for Player 1 of the cycle closed by e at position j.
  bool leaf_p1_wins(EdgeId e, std::int32_t c, std::size_t j) {
    const std::size_t n = verts_.size() - 1;
    WeightVector w = prefix_[n] - prefix_[j] + g_.edge(e).weight;
    if (w.is_zero()) return true;
    std::uint8_t len = j < n ? lca_[j] : kNone;
    std::int32_t rep = last_;
    if (c >= 0) {
      len = len == kNone ? static_cast<std::uint8_t>(d_) : std::min(len, common(last_, c));
      rep = c;
    }
    if (len == kNone) return true;
    auto [idx, inside] = decide(rep, w);
    return !(inside && idx < len);
  }

  void push(EdgeId e, std::int32_t c) {
    lca_stack_.push_back(lca_);
    last_stack_.push_back(last_);
    if (c >= 0) {
      for (auto& l : lca_) l = l == kNone ? static_cast<std::uint8_t>(d_) : std::min(l, common(last_, c));
      last_ = c;
    }
    lca_.push_back(c >= 0 ? static_cast<std::uint8_t>(d_) : kNone);
    const auto& edge = g_.edge(e);
    prefix_.push_back(prefix_.back() + edge.weight);
    edges_.push_back(e);
    colours_.push_back(c);
    pos_[edge.dst] = static_cast<int>(verts_.size());
    verts_.push_back(edge.dst);
  }

  void pop() {
    pos_[verts_.back()] = -1;
    verts_.pop_back();
    edges_.pop_back();
    colours_.pop_back();
    prefix_.pop_back();
    lca_ = std::move(lca_stack_.back());
    lca_stack_.pop_back();
    last_ = last_stack_.back();
    last_stack_.pop_back();
  }

  bool child_p1_wins(EdgeId e, std::int32_t c) {
    if (auto j = closes(e)) return leaf_p1_wins(e, c, *j);
    push(e, c);
    bool r = p1_wins();
    pop();
    return r;
  }

  // First colour against which every edge loses for Player 1.
  std::optional<std::int32_t> p2_colour() {
    const auto out = g_.out_edges(current());
    for (std::size_t c = 0; c < universe_.size(); ++c) {
      const auto ci = static_cast<std::int32_t>(c);
      if (std::none_of(out.begin(), out.end(), [&](EdgeId e) { return child_p1_wins(e, ci); }))
        return ci;
    }
    return std::nullopt;
  }

  std::optional<EdgeId> first_edge(std::int32_t c, bool for_p1) {
    for (EdgeId e : g_.out_edges(current()))
      if (child_p1_wins(e, c) == for_p1) return e;
    return std::nullopt;
  }

  bool p1_wins() {
    if (++nodes_ > budget_)
      throw BudgetExceeded("first-cycle search budget of " + std::to_string(budget_) + " nodes exceeded");
    std::string key = memo_key();
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    bool r;
    if (g_.owner(current()) == Player::One)
      r = !p2_colour().has_value();
    else
      r = !first_edge(-1, false).has_value();
    memo_.emplace(std::move(key), r);
    return r;
  }

 private:
  std::uint8_t common(std::int32_t a, std::int32_t b) const {
    const auto& la = levels_[a];
    const auto& lb = levels_[b];
    std::uint8_t i = 0;
    while (i < la.size() && la[i] == lb[i]) ++i;
    return i;
  }

  // (chain index deciding membership, inside?) for colour c and weight w.
  std::pair<std::uint8_t, bool> decide(std::int32_t c, const WeightVector& w) {
    auto it = weight_index_.find(w);
    if (it == weight_index_.end()) {
      std::vector<std::uint8_t> row(universe_.size());
      for (std::size_t u = 0; u < universe_.size(); ++u) {
        const auto& chain = universe_[u].chain();
        std::uint8_t code = static_cast<std::uint8_t>(2 * d_);
        for (std::size_t i = 0; i < chain.size(); ++i) {
          int s = dot(chain[i].normal(), w).sign();
          if (s != 0) {
            code = static_cast<std::uint8_t>(2 * i + (s < 0 ? 1 : 0));
            break;
          }
        }
        row[u] = code;
      }
      it = weight_index_.emplace(w, decisions_.size()).first;
      decisions_.push_back(std::move(row));
    }
    std::uint8_t code = decisions_[it->second][c];
    return {static_cast<std::uint8_t>(code / 2), (code & 1) != 0};
  }

  // Two paths with equal edges, equal last colour and equal suffix lca
  // lengths have identical futures.
  std::string memo_key() const {
    std::string k;
    k.reserve(edges_.size() * 5 + 8);
    auto put = [&](std::uint32_t x) { k.append(reinterpret_cast<const char*>(&x), sizeof x); };
    put(verts_.front());
    for (EdgeId e : edges_) put(e);
    put(static_cast<std::uint32_t>(last_));
    k.append(reinterpret_cast<const char*>(lca_.data()), lca_.size());
    return k;
  }

  const GameGraph& g_;
  const Universe& universe_;
  std::size_t budget_;
  std::size_t d_;
  std::size_t nodes_ = 0;
  std::vector<std::vector<int>> levels_;

  std::vector<int> pos_;
  std::vector<VertexId> verts_;
  std::vector<EdgeId> edges_;
  std::vector<std::int32_t> colours_;
  std::vector<WeightVector> prefix_;
  std::vector<std::uint8_t> lca_;  // lca length of colours on steps j..n-1
  std::vector<std::vector<std::uint8_t>> lca_stack_;
  std::vector<std::int32_t> last_stack_;
  std::int32_t last_ = -1;

  std::unordered_map<WeightVector, std::size_t, WeightVectorHash> weight_index_;
  std::vector<std::vector<std::uint8_t>> decisions_;
  std::unordered_map<std::string, bool> memo_;
};

std::vector<std::int32_t> state_key(const Search& s, VertexId start) {
  std::vector<std::int32_t> key{static_cast<std::int32_t>(start)};
  for (std::size_t i = 0; i < s.edges().size(); ++i) {
    key.push_back(static_cast<std::int32_t>(s.edges()[i]));
    key.push_back(s.colours()[i]);
  }
  return key;
}

void extract_p2(const GameGraph& g, Search& s, VertexId start, FcbStrategy& out) {
  const VertexId v = s.current();
  auto key = state_key(s, start);
  if (g.owner(v) == Player::One) {
    auto c = s.p2_colour();
    if (!c) throw Falsification("strategy extraction: Player 2 has no winning colour");
    out.set(std::move(key), {FcbDecision::Kind::Colour, static_cast<std::uint32_t>(*c)});
    for (EdgeId e : g.out_edges(v)) {
      if (s.closes(e)) continue;
      s.push(e, *c);
      extract_p2(g, s, start, out);
      s.pop();
    }
  } else {
    auto e = s.first_edge(-1, false);
    if (!e) throw Falsification("strategy extraction: Player 2 has no winning edge");
    out.set(std::move(key), {FcbDecision::Kind::Edge, *e});
    if (!s.closes(*e)) {
      s.push(*e, -1);
      extract_p2(g, s, start, out);
      s.pop();
    }
  }
}

void extract_p1(const GameGraph& g, Search& s, VertexId start, std::size_t ncolours, FcbStrategy& out) {
  const VertexId v = s.current();
  if (g.owner(v) == Player::One) {
    for (std::size_t c = 0; c < ncolours; ++c) {
      const auto ci = static_cast<std::int32_t>(c);
      auto e = s.first_edge(ci, true);
      if (!e) throw Falsification("strategy extraction: Player 1 has no winning edge");
      auto key = state_key(s, start);
      key.push_back(ci);
      out.set(std::move(key), {FcbDecision::Kind::Edge, *e});
      if (!s.closes(*e)) {
        s.push(*e, ci);
        extract_p1(g, s, start, ncolours, out);
        s.pop();
      }
    }
  } else {
    for (EdgeId e : g.out_edges(v)) {
      if (s.closes(e)) continue;
      s.push(e, -1);
      extract_p1(g, s, start, ncolours, out);
      s.pop();
    }
  }
}

}  // namespace

FcbResult solve_fcb(const GameGraph& g, VertexId start, const FcbOptions& opts) {
  if (start >= g.num_vertices()) throw InputError("start vertex out of range");
  for (const auto& v : validate(g))
    throw InputError("first-cycle solve needs a valid normalized graph: " + v.message);

  FcbResult res;
  res.m = colour_norm(g);
  res.universe = std::make_shared<const Universe>(
      opts.universe ? *opts.universe : enumerate_perfect_halfspaces(res.m, g.dimension(), opts.enumeration_budget));
  if (res.universe->empty()) throw InputError("empty colour universe");

  Search s(g, *res.universe, opts.node_budget);
  s.reset(start);
  res.winner = s.p1_wins() ? Player::One : Player::Two;
  if (opts.extract_strategy) {
    FcbStrategy strat(res.winner, res.universe);
    s.reset(start);
    if (res.winner == Player::Two)
      extract_p2(g, s, start, strat);
    else
      extract_p1(g, s, start, res.universe->size(), strat);
    res.strategy = std::move(strat);
  }
  res.nodes = s.nodes();
  return res;
}

FcbDecision fcb_move(const GameGraph& g, const FcbStrategy& s, const FcbState& state,
                     std::optional<ColourId> offered) {
  auto vs = path_vertices(g, state);
  auto sorted = vs;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw UndefinedState("state repeats a vertex; the first-cycle game is already over");
  auto key = encode(state);
  const bool p1_table = s.player() == Player::One;
  if (p1_table) {
    if (!offered) throw UndefinedState("a Player-1 strategy needs the offered colour");
    key.push_back(static_cast<std::int32_t>(*offered));
  }
  const FcbDecision* d = s.find(key);
  if (!d) throw UndefinedState("state outside the strategy's reachable set");
  return *d;
}

std::string dump_strategy(const GameGraph& g, const FcbStrategy& s) {
  std::string out;
  for (const auto& [key, d] : s.table()) {
    std::string line = g.vertex(static_cast<VertexId>(key[0])).name;
    const std::size_t pairs = (key.size() - 1) / 2;
    for (std::size_t i = 0; i < pairs; ++i) {
      const auto& e = g.edge(static_cast<EdgeId>(key[1 + 2 * i]));
      line += " -" + to_string(e.weight);
      if (key[2 + 2 * i] >= 0) line += "@c" + std::to_string(key[2 + 2 * i]);
      line += "-> " + g.vertex(e.dst).name;
    }
    if (key.size() % 2 == 0) line += " | offered c" + std::to_string(key.back());
    line += " => ";
    if (d.kind == FcbDecision::Kind::Colour) {
      line += "colour c" + std::to_string(d.value) + " " + s.universe()[d.value].encoding();
    } else {
      const auto& e = g.edge(d.value);
      line += "edge " + g.vertex(e.src).name + "->" + g.vertex(e.dst).name + " " + to_string(e.weight);
    }
    out += line + "\n";
  }
  return out;
}

}  // namespace mwg
