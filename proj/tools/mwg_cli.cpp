#include "mwg/energy.hpp"
#include "mwg/errors.hpp"
#include "mwg/halfspace.hpp"
#include "mwg/io.hpp"
#include "mwg/oracle.hpp"
#include "mwg/strategy.hpp"
#include "mwg/strategy_spec.hpp"
#include "mwg/transforms.hpp"
#include "mwg/version.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

using nlohmann::json;
using namespace mwg;

namespace {

constexpr int kExitInput = 2;
constexpr int kExitBudget = 3;
constexpr int kExitFalsified = 4;

// ------------------------------------------------------------ formatting

json num(const BigInt& v) { return v.str(); }

json vec(const WeightVector& w) {
  json a = json::array();
  for (const auto& x : w.entries()) a.push_back(x.str());
  return a;
}

json big_with_digits(const BigInt& v) { return {{"value", v.str()}, {"digits", decimal_digits(v)}}; }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  std::ostringstream ss;
  ss << "fnv1a64:" << std::hex << std::setw(16) << std::setfill('0') << h;
  return ss.str();
}

// ------------------------------------------------------------ common state

struct Common {
  std::string input;
  std::string start;
  std::size_t arena_budget = kDefaultArenaBudget;
  std::size_t enumeration_budget = kDefaultEnumerationBudget;
  std::size_t node_budget = 20'000'000;
  std::uint64_t seed = 0;
  bool has_seed = false;
};

struct Loaded {
  GameDocument doc;
  VertexId start;
  std::string digest;
};

Loaded load(const Common& c) {
  std::string text = read_file(c.input);
  Loaded l{parse_game(text), 0, fnv1a64(text)};
  l.start = c.start.empty() ? start_vertex(l.doc) : l.doc.graph.vertex_id(c.start);
  return l;
}

json flags_of(const CLI::App* sub) {
  json f = json::object();
  for (const CLI::Option* o : sub->get_options()) {
    std::string name = !o->get_lnames().empty() ? o->get_lnames().front() : o->get_name();
    if (name.empty() || name == "help") continue;
    const auto& res = o->results();
    if (!res.empty())
      f[name] = o->get_expected_max() > 1 ? json(res) : json(res.back());
    else if (!o->get_default_str().empty())
      f[name] = o->get_default_str();
    else
      f[name] = nullptr;
  }
  return f;
}

json manifest(const CLI::App* sub, const Common& c, const std::string& digest) {
  json m;
  m["command"] = sub->get_name();
  m["flags"] = flags_of(sub);
  m["input_digest"] = digest.empty() ? json(nullptr) : json(digest);
  m["seed"] = c.has_seed ? json(c.seed) : json(nullptr);
  m["budgets"] = {{"arena", c.arena_budget}, {"enumeration", c.enumeration_budget}, {"nodes", c.node_budget}};
  m["version"] = kVersion;
  return m;
}

void emit(const CLI::App* sub, const Common& c, const std::string& digest, json body) {
  json out;
  out["format"] = 1;
  out["manifest"] = manifest(sub, c, digest);
  out["result"] = std::move(body);
  std::cout << out.dump(2) << "\n";
}

SolveOptions solve_options(const Common& c) {
  SolveOptions o;
  o.arena_budget = c.arena_budget;
  o.enumeration_budget = c.enumeration_budget;
  o.node_budget = c.node_budget;
  return o;
}

void add_common(CLI::App* sub, Common& c, bool with_file = true) {
  if (with_file) sub->add_option("game", c.input, "game file")->required();
  if (with_file) sub->add_option("--start", c.start, "start vertex (default: the file's start)");
  sub->add_option("--arena-budget", c.arena_budget, "maximum box-arena states")->capture_default_str();
  sub->add_option("--enum-budget", c.enumeration_budget, "half-space enumeration budget")->capture_default_str();
  sub->add_option("--node-budget", c.node_budget, "first-cycle search nodes")->capture_default_str();
}

// ------------------------------------------------------------ solve

struct SolveArgs {
  std::string mode = "auto";
  std::string objective = "energy";
  std::string credit;
  std::string cap;
  bool deepen = false;
  std::string max_cap = "256";
  std::string strategy_out;
};

int run_solve(const CLI::App* sub, const Common& c, const SolveArgs& a) {
  Loaded l = load(c);
  const GameGraph& g = l.doc.graph;
  SolveOptions o = solve_options(c);
  o.mode = parse_mode(a.mode);
  if (!a.cap.empty()) o.cap = parse_bigint(a.cap);
  o.deepen = a.deepen || a.cap.empty();
  o.max_cap = parse_bigint(a.max_cap);
  o.extract_strategy = !a.strategy_out.empty();

  SolveResult r;
  std::string objective = a.objective;
  if (!a.credit.empty()) {
    WeightVector credit = parse_vector(a.credit);
    if (credit.dim() != g.dimension()) throw InputError("credit has the wrong dimension");
    r = solve_given_credit(g, l.start, credit, o);
    objective = "given-credit";
  } else if (a.objective == "bounding") {
    r = solve_bounding(g, l.start, o);
  } else if (a.objective == "energy") {
    r = solve_arbitrary_credit(g, l.start, o);
  } else {
    throw InputError("unknown objective '" + a.objective + "'");
  }

  json witness_ref = nullptr;
  if (!a.strategy_out.empty()) {
    if (!r.fcb || !r.fcb->strategy) throw InputError("--strategy-out needs a first-cycle solve");
    const GameGraph played = objective == "energy" ? lossy(g) : g;
    std::ofstream out(a.strategy_out);
    if (!out) throw InputError("cannot write " + a.strategy_out);
    out << dump_strategy(played, *r.fcb->strategy);
    witness_ref = a.strategy_out;
  }

  json body;
  body["objective"] = objective;
  body["start"] = g.vertex(l.start).name;
  body["winner"] = to_int(r.winner);
  body["certified"] = r.certified;
  body["method"] = r.method;
  body["cap_used"] = r.cap_used ? num(*r.cap_used) : json(nullptr);
  body["witness"] = r.witness;
  body["witness_ref"] = witness_ref;
  if (r.fcb) {
    body["fcb"] = {{"nodes", r.fcb->nodes}, {"m", num(r.fcb->m)}, {"colours", r.fcb->universe->size()}};
    if (r.fcb->strategy) body["fcb"]["strategy_entries"] = r.fcb->strategy->size();
  }
  emit(sub, c, l.digest, body);
  return 0;
}

// ------------------------------------------------------------ pareto

int run_pareto(const CLI::App* sub, const Common& c, const std::string& max_norm, const std::string& max_cap) {
  Loaded l = load(c);
  SolveOptions o = solve_options(c);
  o.max_cap = parse_bigint(max_cap);
  auto r = pareto_limit(l.doc.graph, l.start, parse_bigint(max_norm), o);
  json body;
  body["antichain"] = json::array();
  for (const auto& w : r.antichain) body["antichain"].push_back(vec(w));
  body["complete"] = r.complete;
  body["probes"] = r.probes;
  emit(sub, c, l.digest, body);
  return 0;
}

// ------------------------------------------------------------ simulate

struct SimArgs {
  std::size_t steps = 100;
  std::string p1 = "random";
  std::string p2 = "random";
  std::string trace;
  std::string scaled_base;
};

int run_simulate(const CLI::App* sub, const Common& c, const SimArgs& a) {
  Loaded l = load(c);
  const GameGraph& g = l.doc.graph;
  StrategySpecOptions so_spec{a.scaled_base, c.node_budget, c.enumeration_budget};
  auto s1 = make_strategy(g, l.start, Player::One, a.p1, so_spec);
  auto s2 = make_strategy(g, l.start, Player::Two, a.p2, so_spec);
  SimulationOptions so;
  so.keep_trace = !a.trace.empty();
  auto rep = simulate(g, l.start, *s1, *s2, a.steps, c.seed, so);

  if (!a.trace.empty()) {
    std::ofstream out(a.trace);
    if (!out) throw InputError("cannot write " + a.trace);
    for (std::size_t t = 0; t < rep.trace.size(); ++t)
      out << t << ' ' << g.vertex(rep.trace[t].vertex).name << ' ' << to_string(rep.trace[t].level) << '\n';
  }

  json body;
  body["p1"] = s1->name();
  body["p2"] = s2->name();
  body["steps"] = rep.steps;
  body["max_norm"] = num(rep.max_norm);
  body["trace_ref"] = a.trace.empty() ? json(nullptr) : json(a.trace);
  body["events"] = rep.events;
  if (auto* p = dynamic_cast<P1Automaton*>(s1.get())) {
    const auto& b = p->bound_values();
    body["scaled_base"] = b.scaled_base ? num(*b.scaled_base) : json(nullptr);
    body["final_colour"] = p->colour().encoding();
  }
  if (rep.checks) {
    const auto& k = *rep.checks;
    body["checks"] = {{"clean", k.clean()},
                      {"shifts", k.shifts},
                      {"cancellations", k.cancellations},
                      {"energy_identity_failures", k.energy_identity_failures},
                      {"negative_counters", k.negative_counters},
                      {"non_monotone_counters", k.non_monotone_counters},
                      {"hard_bound_violations", k.hard_bound_violations},
                      {"soft_bound_restore_failures", k.soft_bound_restore_failures},
                      {"infeasible_cancellations", k.infeasible_cancellations},
                      {"unknown_cycle_weights", k.unknown_cycle_weights}};
    json counters = json::array();
    for (const auto& e : rep.final_counters)
      if (e.value != 0) counters.push_back({{"k", e.k}, {"weight", vec(e.weight)}, {"value", num(e.value)}});
    body["nonzero_counters"] = counters;
  }
  if (dynamic_cast<P2Lift*>(s2.get())) body["max_p2_memory"] = rep.max_p2_memory;
  emit(sub, c, l.digest, body);
  return 0;
}

// ------------------------------------------------------------ bounds

int run_bounds(const CLI::App* sub, const Common& c, const std::string& credit) {
  Loaded l = load(c);
  const GameGraph& g = l.doc.graph;
  BoundsPack b = bounds(g);
  json body;
  body["m"] = num(b.m);
  body["d"] = b.d;
  body["B"] = big_with_digits(b.B);
  body["levels"] = json::array();
  for (std::size_t k = 1; k <= b.d; ++k)
    body["levels"].push_back({{"k", k},
                              {"U", big_with_digits(b.U[k - 1])},
                              {"u", big_with_digits(b.u[k - 1])},
                              {"S", big_with_digits(b.S[k - 1])},
                              {"L", big_with_digits(b.L[k - 1])}});
  if (!credit.empty()) {
    WeightVector cr = parse_vector(credit);
    body["arena_size_bound"] =
        big_with_digits(arena_size_bound(BigInt(g.num_vertices()), edge_norm(g), cr, g.dimension()));
  }
  emit(sub, c, l.digest, body);
  return 0;
}

// ------------------------------------------------------------ transform

int run_transform(const Common& c, bool lossy_only, const std::string& cap, const std::string& credit) {
  Loaded l = load(c);
  const GameGraph& g = l.doc.graph;
  const std::string start = g.vertex(l.start).name;
  if (lossy_only == !cap.empty()) throw InputError("transform needs exactly one of --lossy or --cap/--credit");
  if (lossy_only) {
    std::cout << dump_game(lossy(g), start);
  } else {
    if (credit.empty()) throw InputError("--cap needs --credit");
    WeightVector cr = parse_vector(credit);
    if (cr.dim() != g.dimension()) throw InputError("credit has the wrong dimension");
    GameGraph capped_g = capped_chain(g, cr, parse_bigint(cap), c.arena_budget);
    std::cout << dump_game(capped_g, capped_chain_start(start, g.dimension()));
  }
  return 0;
}

// ------------------------------------------------------------ enumerate

int run_enumerate(const Common& c, const std::string& m, std::size_t dim, bool perfect) {
  if (dim == 0) throw InputError("--dim must be positive");
  BigInt mm = parse_bigint(m);
  if (mm < 1) throw InputError("--m must be positive");
  if (perfect) {
    for (const auto& p : enumerate_perfect_halfspaces(mm, dim, c.enumeration_budget)) std::cout << p.encoding() << "\n";
  } else {
    for (const auto& h : enumerate_m_open_halfspaces(mm, Subspace::whole(dim), c.enumeration_budget))
      std::cout << h.encoding() << "\n";
  }
  return 0;
}

// ------------------------------------------------------------ crosscheck

struct CrossArgs {
  std::string corpus = "random:50";
  std::size_t depth = 8;
  std::size_t vertices = 3;
  std::size_t dimension = 2;
  long long wmax = 1;
};

int run_crosscheck(const CLI::App* sub, Common& c, const CrossArgs& a) {
  struct Instance {
    std::string id;
    GameGraph g;
    VertexId start;
  };
  std::vector<Instance> corpus;
  std::string digest;
  if (a.corpus.rfind("random:", 0) == 0) {
    std::size_t n = std::stoul(a.corpus.substr(7));
    RandomGameParams p;
    p.vertices = a.vertices;
    p.dimension = a.dimension;
    p.wmax = a.wmax;
    for (std::size_t i = 0; i < n; ++i) corpus.push_back({"seed " + std::to_string(c.seed + i), random_game(p, c.seed + i), 0});
  } else {
    std::vector<std::string> files;
    if (std::filesystem::is_directory(a.corpus)) {
      for (const auto& e : std::filesystem::directory_iterator(a.corpus))
        if (e.is_regular_file()) files.push_back(e.path().string());
      std::sort(files.begin(), files.end());
    } else {
      files.push_back(a.corpus);
    }
    std::string all;
    for (const auto& f : files) {
      std::string text = read_file(f);
      all += text;
      auto doc = parse_game(text);
      VertexId s = start_vertex(doc);
      corpus.push_back({std::filesystem::path(f).filename().string(), std::move(doc.graph), s});
    }
    digest = fnv1a64(all);
  }

  CrossCheckOptions o;
  o.solve = solve_options(c);
  o.oracle_depth = a.depth;
  std::cout << "# " << json{{"format", 1}, {"manifest", manifest(sub, c, digest)}}.dump() << "\n";
  std::cout << std::left << std::setw(14) << "instance" << std::setw(10) << "fcb" << std::setw(16) << "box"
            << std::setw(16) << "oracle" << "verdict\n";
  std::size_t contradictions = 0;
  for (const auto& inst : corpus) {
    auto r = cross_check(inst.g, inst.start, o);
    std::string box = std::to_string(to_int(r.box_lossy->winner)) + (r.box_lossy->certified ? " certified" : " open");
    std::string oracle = r.oracle.win1 ? "win1@" + std::to_string(r.oracle.depth) : "inconclusive";
    std::cout << std::setw(14) << inst.id << std::setw(10) << to_int(r.fcb_lossy) << std::setw(16) << box
              << std::setw(16) << oracle << (r.contradiction ? "CONTRADICTION" : "consistent") << "\n";
    for (const auto& note : r.notes) std::cout << "  " << note << "\n";
    contradictions += r.contradiction;
  }
  std::cout << corpus.size() << " instances, " << contradictions << " contradictions\n";
  return contradictions ? kExitFalsified : 0;
}

// ------------------------------------------------------------ validate

int run_validate(const CLI::App* sub, const Common& c) {
  std::string text = read_file(c.input);
  json body;
  GameDocument doc;
  try {
    doc = parse_game(text);
  } catch (const InputError& e) {
    body["valid"] = false;
    body["violations"] = json::array({{{"kind", "parse"}, {"message", e.what()}}});
    emit(sub, c, fnv1a64(text), body);
    return kExitInput;
  }
  auto vs = validate(doc.graph);
  body["valid"] = vs.empty();
  body["vertices"] = doc.graph.num_vertices();
  body["edges"] = doc.graph.num_edges();
  body["violations"] = json::array();
  for (const auto& v : vs) body["violations"].push_back({{"kind", to_string(v.kind)}, {"message", v.message}});
  emit(sub, c, fnv1a64(text), body);
  return vs.empty() ? 0 : kExitInput;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-dimensional energy and bounding games"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  Common common;

  auto* solve = app.add_subcommand("solve", "decide the winner");
  SolveArgs sa;
  add_common(solve, common);
  solve->add_option("--mode", sa.mode, "fcb, box or auto")->capture_default_str();
  solve->add_option("--objective", sa.objective, "energy (arbitrary credit) or bounding")->capture_default_str();
  solve->add_option("--credit", sa.credit, "initial credit, e.g. 2,1");
  solve->add_option("--cap", sa.cap, "fixed box cap");
  solve->add_flag("--deepen", sa.deepen, "double the cap up to --cap or --max-cap");
  solve->add_option("--max-cap", sa.max_cap, "last cap tried by deepening")->capture_default_str();
  solve->add_option("--strategy-out", sa.strategy_out, "write the first-cycle strategy table here");

  auto* pareto = app.add_subcommand("pareto", "minimal winning initial credits");
  std::string max_norm = "4", pareto_cap = "256";
  add_common(pareto, common);
  pareto->add_option("--max-norm", max_norm, "largest credit norm searched")->capture_default_str();
  pareto->add_option("--max-cap", pareto_cap, "last cap tried per probe")->capture_default_str();

  auto* sim = app.add_subcommand("simulate", "play two strategies against each other");
  SimArgs sim_args;
  add_common(sim, common);
  sim->add_option("--steps", sim_args.steps, "number of moves")->capture_default_str();
  sim->add_option("--seed", common.seed, "random seed")->capture_default_str();
  sim->add_option("--p1", sim_args.p1, "random | counterless:E;.. | scripted:E;.. | threshold:i:c:E:E | automaton[:greedy]")
      ->capture_default_str();
  sim->add_option("--p2", sim_args.p2, "random | counterless:E;.. | scripted:E;.. | threshold:i:c:E:E | lift")
      ->capture_default_str();
  sim->add_option("--trace", sim_args.trace, "write one configuration per line here");
  sim->add_option("--scaled-base", sim_args.scaled_base, "test-only automaton bounds q^{2k}; 'auto' picks the kernel scale");

  auto* bnd = app.add_subcommand("bounds", "print the bound values of a game");
  std::string bound_credit;
  add_common(bnd, common);
  bnd->add_option("--credit", bound_credit, "also print the capped-arena size bound for this credit");

  auto* tr = app.add_subcommand("transform", "write a transformed game file");
  bool tr_lossy = false;
  std::string tr_cap, tr_credit;
  add_common(tr, common);
  tr->add_flag("--lossy", tr_lossy, "add -e_i self-loops at Player-1 vertices");
  tr->add_option("--cap", tr_cap, "cap of the capped product");
  tr->add_option("--credit", tr_credit, "fence per coordinate of the capped product");

  auto* en = app.add_subcommand("enumerate", "list M-generated half-spaces of Q^d");
  std::string en_m = "1";
  std::size_t en_dim = 2;
  bool en_perfect = false;
  add_common(en, common, false);
  en->add_option("--m", en_m, "generator norm")->capture_default_str();
  en->add_option("--dim", en_dim, "dimension")->capture_default_str();
  en->add_flag("--perfect", en_perfect, "list perfect half-spaces instead");

  auto* cc = app.add_subcommand("crosscheck", "compare solvers and the oracle on a corpus");
  CrossArgs ca;
  add_common(cc, common, false);
  cc->add_option("--corpus", ca.corpus, "random:N, a game file or a directory of game files")->capture_default_str();
  cc->add_option("--seed", common.seed, "seed of the first random instance")->capture_default_str();
  cc->add_option("--depth", ca.depth, "self-covering search depth")->capture_default_str();
  cc->add_option("--vertices", ca.vertices, "random instance size")->capture_default_str();
  cc->add_option("--dimension", ca.dimension, "random instance dimension")->capture_default_str();
  cc->add_option("--wmax", ca.wmax, "random weight range")->capture_default_str();

  auto* dot = app.add_subcommand("export-dot", "write the graph in DOT format");
  add_common(dot, common);

  auto* val = app.add_subcommand("validate", "check the standing assumptions");
  add_common(val, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (*solve) return run_solve(solve, common, sa);
    if (*pareto) return run_pareto(pareto, common, max_norm, pareto_cap);
    if (*sim) {
      common.has_seed = true;
      return run_simulate(sim, common, sim_args);
    }
    if (*bnd) return run_bounds(bnd, common, bound_credit);
    if (*tr) return run_transform(common, tr_lossy, tr_cap, tr_credit);
    if (*en) return run_enumerate(common, en_m, en_dim, en_perfect);
    if (*cc) {
      common.has_seed = true;
      return run_crosscheck(cc, common, ca);
    }
    if (*dot) {
      std::cout << to_dot(load(common).doc.graph);
      return 0;
    }
    if (*val) return run_validate(val, common);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const std::exception& e) {
    // Falsification, undefined strategy states and anything unexpected.
    std::cerr << "internal failure: " << e.what() << "\n";
    return kExitFalsified;
  }
  return 0;
}
