#include "oracles.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>

namespace oracle {

using Rational = boost::multiprecision::cpp_rational;

mwg::GameDocument load_named(const std::string& name) {
  return mwg::load_game(std::string(MWG_GAMES_DIR) + "/" + name + ".json");
}

GameGraph make_graph(std::size_t d, const std::vector<std::pair<std::string, int>>& vertices,
                     const std::vector<std::tuple<std::string, std::string, WeightVector>>& edges) {
  mwg::GraphSpec spec;
  spec.dimension = d;
  for (const auto& [name, owner] : vertices) spec.vertices.push_back({name, owner == 1 ? Player::One : Player::Two});
  for (const auto& [s, t, w] : edges) spec.edges.push_back({s, t, w});
  return GameGraph(spec);
}

BigInt pow_by_squaring(BigInt base, unsigned long exponent) {
  BigInt result = 1;
  while (exponent) {
    if (exponent & 1) result *= base;
    base *= base;
    exponent >>= 1;
  }
  return result;
}

BigInt arena_recurrence(const BigInt& nv, const BigInt& ne, const std::vector<long long>& credit, std::size_t d) {
  BigInt a = nv;
  const unsigned long e = 2ul * (d + 2) * (d + 2) * (d + 2);
  for (std::size_t i = 0; i < d; ++i) a = 1 + a * (BigInt(credit[i]) + pow_by_squaring(4 * a * ne, e));
  return a;
}

std::vector<long long> to_ll(const WeightVector& w) {
  std::vector<long long> out;
  for (const auto& x : w.entries()) out.push_back(static_cast<long long>(x));
  return out;
}

std::set<std::vector<long long>> cycle_weights(const GameGraph& g) {
  std::set<std::vector<long long>> out;
  const std::size_t d = g.dimension();
  std::vector<bool> on(g.num_vertices(), false);
  std::function<void(VertexId, VertexId, std::vector<long long>)> walk = [&](VertexId root, VertexId v,
                                                                             std::vector<long long> w) {
    for (const auto& e : g.edges()) {
      if (e.src != v) continue;
      auto next = w;
      for (std::size_t i = 0; i < d; ++i) next[i] += static_cast<long long>(e.weight[i]);
      if (e.dst == root) {
        if (std::any_of(next.begin(), next.end(), [](long long x) { return x != 0; })) out.insert(next);
      } else if (!on[e.dst]) {
        on[e.dst] = true;
        walk(root, e.dst, next);
        on[e.dst] = false;
      }
    }
  };
  for (VertexId r = 0; r < g.num_vertices(); ++r) {
    on[r] = true;
    walk(r, r, std::vector<long long>(d, 0));
    on[r] = false;
  }
  return out;
}

namespace {

std::vector<long long> primitive_sign(std::vector<long long> v) {
  long long g = 0;
  for (long long x : v) g = std::gcd(g, std::llabs(x));
  if (g == 0) return v;
  for (auto& x : v) x /= g;
  for (long long x : v)
    if (x != 0) {
      if (x < 0)
        for (auto& y : v) y = -y;
      break;
    }
  return v;
}

}  // namespace

std::size_t count_top_halfspaces(long long m, std::size_t d) {
  if (d == 1) return 2;
  std::vector<std::vector<long long>> box;
  std::vector<long long> cur(d, -m);
  while (true) {
    if (std::any_of(cur.begin(), cur.end(), [](long long x) { return x != 0; })) box.push_back(cur);
    std::size_t i = 0;
    while (i < d && cur[i] == m) cur[i++] = -m;
    if (i == d) break;
    ++cur[i];
  }
  std::set<std::vector<long long>> normals;
  if (d == 2) {
    for (const auto& v : box) normals.insert(primitive_sign({-v[1], v[0]}));
  } else if (d == 3) {
    for (const auto& a : box)
      for (const auto& b : box) {
        std::vector<long long> c = {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
        if (std::any_of(c.begin(), c.end(), [](long long x) { return x != 0; })) normals.insert(primitive_sign(c));
      }
  } else {
    throw std::invalid_argument("count_top_halfspaces: d <= 3 only");
  }
  return 2 * normals.size();
}

bool lca_contains(const std::vector<mwg::PerfectHalfSpace>& colours, const WeightVector& w) {
  if (colours.empty()) return false;
  std::size_t common = colours.front().chain().size();
  for (const auto& c : colours) {
    std::size_t j = 0;
    while (j < common && j < c.chain().size() && c.chain()[j] == colours.front().chain()[j]) ++j;
    common = j;
  }
  for (std::size_t j = 0; j < common; ++j) {
    BigInt dotp = mwg::dot(colours.front().chain()[j].normal(), w);
    if (dotp < 0) return true;
    if (dotp > 0) return false;
  }
  return false;
}

namespace {

struct FirstCycleBrute {
  const GameGraph& g;
  const std::vector<mwg::PerfectHalfSpace>& universe;
  std::vector<VertexId> path;
  std::vector<std::pair<mwg::EdgeId, int>> steps;

  Player solve() {
    VertexId v = path.back();
    if (g.owner(v) == Player::One) {
      for (int c = 0; c < static_cast<int>(universe.size()); ++c) {
        bool all_lose = true;
        for (auto e : g.out_edges(v))
          if (step(e, c) == Player::One) {
            all_lose = false;
            break;
          }
        if (all_lose) return Player::Two;
      }
      return Player::One;
    }
    for (auto e : g.out_edges(v))
      if (step(e, -1) == Player::Two) return Player::Two;
    return Player::One;
  }

  Player step(mwg::EdgeId e, int colour) {
    VertexId dst = g.edge(e).dst;
    auto it = std::find(path.begin(), path.end(), dst);
    if (it != path.end()) {
      std::size_t from = it - path.begin();
      WeightVector w(g.dimension());
      std::vector<mwg::PerfectHalfSpace> colours;
      auto add = [&](mwg::EdgeId x, int c) {
        w += g.edge(x).weight;
        if (c >= 0) colours.push_back(universe[c]);
      };
      for (std::size_t i = from; i < steps.size(); ++i) add(steps[i].first, steps[i].second);
      add(e, colour);
      return lca_contains(colours, w) ? Player::Two : Player::One;
    }
    path.push_back(dst);
    steps.push_back({e, colour});
    Player r = solve();
    path.pop_back();
    steps.pop_back();
    return r;
  }
};

}  // namespace

Player first_cycle_winner(const GameGraph& g, VertexId start, const std::vector<mwg::PerfectHalfSpace>& universe) {
  FirstCycleBrute b{g, universe, {start}, {}};
  return b.solve();
}

bool safety_player1_wins(const GameGraph& g, VertexId start, const std::vector<long long>& lower,
                         const std::vector<long long>& upper) {
  const std::size_t d = g.dimension();
  using State = std::pair<VertexId, std::vector<long long>>;
  std::vector<std::vector<long long>> levels;
  std::vector<long long> cur = lower;
  while (true) {
    levels.push_back(cur);
    std::size_t i = 0;
    while (i < d && cur[i] == upper[i]) {
      cur[i] = lower[i];
      ++i;
    }
    if (i == d) break;
    ++cur[i];
  }
  std::map<State, bool> lose;
  for (VertexId v = 0; v < g.num_vertices(); ++v)
    for (const auto& l : levels) lose[{v, l}] = false;
  auto bad = [&](const std::vector<long long>& l, mwg::EdgeId e) {
    std::vector<long long> n = l;
    for (std::size_t i = 0; i < d; ++i) n[i] += static_cast<long long>(g.edge(e).weight[i]);
    for (std::size_t i = 0; i < d; ++i)
      if (n[i] < lower[i] || n[i] > upper[i]) return true;
    return lose.at({g.edge(e).dst, n});
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto& [s, l] : lose) {
      if (l) continue;
      auto out = g.out_edges(s.first);
      bool now;
      if (g.owner(s.first) == Player::One)
        now = std::all_of(out.begin(), out.end(), [&](mwg::EdgeId e) { return bad(s.second, e); });
      else
        now = std::any_of(out.begin(), out.end(), [&](mwg::EdgeId e) { return bad(s.second, e); });
      if (now) {
        l = true;
        changed = true;
      }
    }
  }
  return !lose.at({start, std::vector<long long>(d, 0)});
}

bool player2_forces_negative(const GameGraph& g, VertexId v, std::vector<long long> energy, std::size_t depth) {
  if (std::any_of(energy.begin(), energy.end(), [](long long x) { return x < 0; })) return true;
  if (depth == 0) return false;
  auto next = [&](mwg::EdgeId e) {
    auto n = energy;
    for (std::size_t i = 0; i < n.size(); ++i) n[i] += static_cast<long long>(g.edge(e).weight[i]);
    return player2_forces_negative(g, g.edge(e).dst, n, depth - 1);
  };
  auto out = g.out_edges(v);
  if (g.owner(v) == Player::One) return std::all_of(out.begin(), out.end(), next);
  return std::any_of(out.begin(), out.end(), next);
}

namespace {

bool cover(const GameGraph& g, std::vector<std::pair<VertexId, std::vector<long long>>>& branch, std::size_t left) {
  const auto& [v, e] = branch.back();
  if (std::any_of(e.begin(), e.end(), [](long long x) { return x < 0; })) return false;
  for (std::size_t i = 0; i + 1 < branch.size(); ++i) {
    if (branch[i].first != v) continue;
    bool ge = true;
    for (std::size_t j = 0; j < e.size(); ++j) ge = ge && e[j] >= branch[i].second[j];
    if (ge) return true;
  }
  if (left == 0) return false;
  const VertexId here = v;
  const auto energy = e;
  auto child = [&](mwg::EdgeId id) {
    auto n = energy;
    for (std::size_t j = 0; j < n.size(); ++j) n[j] += static_cast<long long>(g.edge(id).weight[j]);
    branch.push_back({g.edge(id).dst, n});
    bool r = cover(g, branch, left - 1);
    branch.pop_back();
    return r;
  };
  auto out = g.out_edges(here);
  if (g.owner(here) == Player::One) return std::any_of(out.begin(), out.end(), child);
  return std::all_of(out.begin(), out.end(), child);
}

}  // namespace

bool credit_cover(const GameGraph& g, VertexId start, const std::vector<long long>& credit, std::size_t depth) {
  std::vector<std::pair<VertexId, std::vector<long long>>> branch{{start, credit}};
  return cover(g, branch, depth);
}

bool positive_kernel_exists(const std::vector<WeightVector>& columns) {
  const std::size_t n = columns.size();
  if (n == 0) return false;
  const std::size_t d = columns.front().dim();
  // rows: coeffs . x <= rhs
  struct Row {
    std::vector<Rational> a;
    Rational b;
  };
  std::vector<Row> rows;
  for (std::size_t i = 0; i < n; ++i) {
    Row r{std::vector<Rational>(n, 0), -1};
    r.a[i] = -1;  // x_i >= 1
    rows.push_back(r);
  }
  for (std::size_t j = 0; j < d; ++j) {
    Row up{std::vector<Rational>(n), 0}, down{std::vector<Rational>(n), 0};
    for (std::size_t i = 0; i < n; ++i) {
      up.a[i] = Rational(columns[i][j]);
      down.a[i] = -Rational(columns[i][j]);
    }
    rows.push_back(up);
    rows.push_back(down);
  }
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<Row> pos, neg, keep;
    for (auto& r : rows) (r.a[k] > 0 ? pos : r.a[k] < 0 ? neg : keep).push_back(r);
    for (const auto& p : pos)
      for (const auto& q : neg) {
        Rational sp = p.a[k], sq = -q.a[k];
        Row c{std::vector<Rational>(n), p.b * sq + q.b * sp};
        for (std::size_t i = 0; i < n; ++i) c.a[i] = p.a[i] * sq + q.a[i] * sp;
        // Positive rescaling so that equal half-spaces become equal rows.
        for (const auto& x : c.a)
          if (x != 0) {
            Rational s = x < 0 ? Rational(-x) : x;
            for (auto& y : c.a) y /= s;
            c.b /= s;
            break;
          }
        keep.push_back(c);
      }
    // Drop exact duplicates to keep the blow-up in check.
    std::sort(keep.begin(), keep.end(), [](const Row& x, const Row& y) {
      return std::tie(x.a, x.b) < std::tie(y.a, y.b);
    });
    keep.erase(std::unique(keep.begin(), keep.end(), [](const Row& x, const Row& y) { return x.a == y.a && x.b == y.b; }),
               keep.end());
    rows = std::move(keep);
  }
  return std::all_of(rows.begin(), rows.end(), [](const Row& r) { return r.b >= 0; });
}

}  // namespace oracle
