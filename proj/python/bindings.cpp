#include "mwg/energy.hpp"
#include "mwg/errors.hpp"
#include "mwg/halfspace.hpp"
#include "mwg/io.hpp"
#include "mwg/linalg.hpp"
#include "mwg/oracle.hpp"
#include "mwg/strategy.hpp"
#include "mwg/strategy_spec.hpp"
#include "mwg/transforms.hpp"
#include "mwg/version.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace mwg;

namespace {

py::int_ to_py(const BigInt& v) {
  return py::reinterpret_steal<py::int_>(PyLong_FromString(v.str().c_str(), nullptr, 10));
}

BigInt from_py(const py::handle& o) { return parse_bigint(py::str(o).cast<std::string>()); }

py::tuple to_py(const WeightVector& w) {
  py::tuple t(w.dim());
  for (std::size_t i = 0; i < w.dim(); ++i) t[i] = to_py(w[i]);
  return t;
}

WeightVector vector_from_py(const py::sequence& s) {
  std::vector<BigInt> entries;
  for (auto x : s) entries.push_back(from_py(x));
  return WeightVector(std::move(entries));
}

// A graph plus its designated start vertex.
struct Game {
  GameGraph graph;
  std::string start;

  VertexId start_id(const std::optional<std::string>& override_start) const {
    return graph.vertex_id(override_start.value_or(start));
  }
};

Game from_document(GameDocument doc) {
  std::string s = doc.graph.vertex(start_vertex(doc)).name;
  return Game{std::move(doc.graph), std::move(s)};
}

py::dict solve_result(const SolveResult& r) {
  py::dict d;
  d["winner"] = to_int(r.winner);
  d["certified"] = r.certified;
  d["method"] = r.method;
  d["cap_used"] = r.cap_used ? py::object(to_py(*r.cap_used)) : py::object(py::none());
  d["witness"] = r.witness;
  return d;
}

SolveOptions make_options(const std::string& mode, const py::object& cap, std::optional<bool> deepen,
                          const py::object& max_cap) {
  SolveOptions o;
  o.mode = parse_mode(mode);
  if (!cap.is_none()) o.cap = from_py(cap);
  o.deepen = deepen.value_or(cap.is_none());
  o.max_cap = from_py(max_cap);
  return o;
}

}  // namespace

PYBIND11_MODULE(_mwgames, m) {
  m.doc() = "Multi-dimensional energy and bounding games";
  m.attr("__version__") = kVersion;

  static py::exception<Error> error(m, "Error", PyExc_RuntimeError);
  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", error.ptr());
  py::register_exception<Falsification>(m, "Falsification", error.ptr());
  py::register_exception<UndefinedState>(m, "UndefinedState", error.ptr());
  py::register_exception<InconsistentObservation>(m, "InconsistentObservation", error.ptr());

  py::class_<Game>(m, "Game")
      .def_static("load", [](const std::string& path) { return from_document(load_game(path)); })
      .def_static("from_json", [](const std::string& text) { return from_document(parse_game(text)); })
      .def("to_json", [](const Game& g) { return dump_game(g.graph, g.start); })
      .def_property_readonly("dimension", [](const Game& g) { return g.graph.dimension(); })
      .def_property_readonly("start", [](const Game& g) { return g.start; })
      .def_property_readonly("vertices",
                             [](const Game& g) {
                               py::list out;
                               for (const auto& v : g.graph.vertices()) out.append(py::make_tuple(v.name, to_int(v.owner)));
                               return out;
                             })
      .def_property_readonly("edges",
                             [](const Game& g) {
                               py::list out;
                               for (const auto& e : g.graph.edges())
                                 out.append(py::make_tuple(g.graph.vertex(e.src).name, g.graph.vertex(e.dst).name,
                                                           to_py(e.weight)));
                               return out;
                             })
      .def("validate",
           [](const Game& g) {
             py::list out;
             for (const auto& v : validate(g.graph)) out.append(py::make_tuple(to_string(v.kind), v.message));
             return out;
           })
      .def("lossy", [](const Game& g) { return Game{lossy(g.graph), g.start}; })
      .def(
          "capped",
          [](const Game& g, const py::sequence& credit, const py::object& cap) {
            GameGraph c = capped_chain(g.graph, vector_from_py(credit), from_py(cap));
            return Game{std::move(c), capped_chain_start(g.start, g.graph.dimension())};
          },
          py::arg("credit"), py::arg("cap"))
      .def("simple_cycle_weights",
           [](const Game& g) {
             py::list out;
             for (const auto& w : enumerate_simple_cycles(g.graph).weights) out.append(to_py(w));
             return out;
           })
      .def("to_dot", [](const Game& g) { return to_dot(g.graph); })
      .def("__repr__", [](const Game& g) {
        return "<Game d=" + std::to_string(g.graph.dimension()) + " |V|=" + std::to_string(g.graph.num_vertices()) +
               " |E|=" + std::to_string(g.graph.num_edges()) + " start=" + g.start + ">";
      });

  m.def(
      "solve",
      [](const Game& g, const std::string& objective, const std::string& mode, const py::object& credit,
         const py::object& cap, std::optional<bool> deepen, const py::object& max_cap,
         const std::optional<std::string>& start) {
        SolveOptions o = make_options(mode, cap, deepen, max_cap);
        VertexId s = g.start_id(start);
        if (!credit.is_none()) return solve_result(solve_given_credit(g.graph, s, vector_from_py(credit), o));
        if (objective == "energy") return solve_result(solve_arbitrary_credit(g.graph, s, o));
        if (objective == "bounding") return solve_result(solve_bounding(g.graph, s, o));
        throw InputError("unknown objective '" + objective + "'");
      },
      py::arg("game"), py::arg("objective") = "energy", py::arg("mode") = "auto", py::arg("credit") = py::none(),
      py::arg("cap") = py::none(), py::arg("deepen") = py::none(), py::arg("max_cap") = 256,
      py::arg("start") = py::none(),
      "Winner of the arbitrary-credit energy game, the bounding game, or the energy game with a given credit.");

  m.def(
      "solve_fcb",
      [](const Game& g, const std::optional<std::string>& start) {
        auto r = solve_fcb(g.graph, g.start_id(start));
        py::dict d;
        d["winner"] = to_int(r.winner);
        d["nodes"] = r.nodes;
        d["colours"] = r.universe->size();
        d["m"] = to_py(r.m);
        d["strategy"] = r.strategy ? py::object(py::str(dump_strategy(g.graph, *r.strategy))) : py::object(py::none());
        return d;
      },
      py::arg("game"), py::arg("start") = py::none());

  m.def(
      "pareto",
      [](const Game& g, const py::object& max_norm, const py::object& max_cap) {
        SolveOptions o;
        o.max_cap = from_py(max_cap);
        auto r = pareto_limit(g.graph, g.start_id({}), from_py(max_norm), o);
        py::dict d;
        py::list anti;
        for (const auto& w : r.antichain) anti.append(to_py(w));
        d["antichain"] = anti;
        d["complete"] = r.complete;
        d["probes"] = r.probes;
        return d;
      },
      py::arg("game"), py::arg("max_norm"), py::arg("max_cap") = 256);

  m.def(
      "bounds",
      [](const Game& g) {
        BoundsPack b = bounds(g.graph);
        py::dict d;
        d["m"] = to_py(b.m);
        d["d"] = b.d;
        d["B"] = to_py(b.B);
        for (const char* key : {"U", "u", "S", "L"}) {
          const auto& src = key[0] == 'U' ? b.U : key[0] == 'u' ? b.u : key[0] == 'S' ? b.S : b.L;
          py::list l;
          for (const auto& x : src) l.append(to_py(x));
          d[key] = l;
        }
        return d;
      },
      py::arg("game"));

  m.def(
      "arena_size_bound",
      [](const py::object& nv, const py::object& ne_norm, const py::sequence& credit, std::size_t d) {
        return to_py(arena_size_bound(from_py(nv), from_py(ne_norm), vector_from_py(credit), d));
      },
      py::arg("nv"), py::arg("ne_norm"), py::arg("credit"), py::arg("d"));

  m.def(
      "enumerate_half_spaces",
      [](const py::object& mm, std::size_t dim, bool perfect) {
        std::vector<std::string> out;
        if (perfect) {
          for (const auto& p : enumerate_perfect_halfspaces(from_py(mm), dim)) out.push_back(p.encoding());
        } else {
          for (const auto& h : enumerate_m_open_halfspaces(from_py(mm), Subspace::whole(dim))) out.push_back(h.encoding());
        }
        return out;
      },
      py::arg("m"), py::arg("dim"), py::arg("perfect") = false);

  m.def(
      "positive_kernel_solution",
      [](const std::vector<py::sequence>& columns, const py::object& mm) -> py::object {
        std::vector<WeightVector> cols;
        for (const auto& c : columns) cols.push_back(vector_from_py(c));
        auto x = positive_kernel_solution(ColumnSystem(std::move(cols), from_py(mm)));
        if (!x) return py::none();
        py::list out;
        for (const auto& v : *x) out.append(to_py(v));
        return out;
      },
      py::arg("columns"), py::arg("m"));

  m.def(
      "alternatives",
      [](const std::vector<py::sequence>& columns, const py::object& mm) -> py::tuple {
        std::vector<WeightVector> cols;
        for (const auto& c : columns) cols.push_back(vector_from_py(c));
        auto a = alternatives(ColumnSystem(std::move(cols), from_py(mm)));
        if (auto* p = std::get_if<PositiveCombination>(&a)) {
          py::list out;
          for (const auto& v : p->coefficients) out.append(to_py(v));
          return py::make_tuple("combination", out);
        }
        return py::make_tuple("half_space", std::get<ClosedHalfSpace>(a).half_space.encoding());
      },
      py::arg("columns"), py::arg("m"));

  m.def(
      "self_covering_search",
      [](const Game& g, std::size_t depth) {
        auto r = self_covering_search(g.graph, g.start_id({}), depth);
        py::dict d;
        d["win1"] = r.win1;
        d["depth"] = r.depth;
        d["nodes_visited"] = r.nodes_visited;
        d["tree_size"] = r.tree ? py::object(py::int_(tree_size(*r.tree))) : py::object(py::none());
        d["tree_leaves"] = r.tree ? py::object(py::int_(tree_leaves(*r.tree))) : py::object(py::none());
        return d;
      },
      py::arg("game"), py::arg("depth"));

  m.def(
      "random_game",
      [](std::uint64_t seed, std::size_t vertices, std::size_t dimension, long long wmax) {
        RandomGameParams p;
        p.vertices = vertices;
        p.dimension = dimension;
        p.wmax = wmax;
        GameGraph g = random_game(p, seed);
        std::string s = g.vertex(0).name;
        return Game{std::move(g), std::move(s)};
      },
      py::arg("seed"), py::arg("vertices") = 3, py::arg("dimension") = 2, py::arg("wmax") = 1);

  m.def(
      "cross_check",
      [](const Game& g, std::size_t depth) {
        CrossCheckOptions o;
        o.oracle_depth = depth;
        auto r = cross_check(g.graph, g.start_id({}), o);
        py::dict d;
        d["fcb_lossy"] = to_int(r.fcb_lossy);
        d["box_lossy"] = r.box_lossy ? py::object(solve_result(*r.box_lossy)) : py::object(py::none());
        d["oracle_win1"] = r.oracle.win1;
        d["contradiction"] = r.contradiction;
        d["notes"] = r.notes;
        return d;
      },
      py::arg("game"), py::arg("depth") = 8);

  m.def(
      "simulate",
      [](const Game& g, std::size_t steps, std::uint64_t seed, const std::string& p1, const std::string& p2,
         const std::string& scaled_base, bool keep_trace) {
        VertexId s = g.start_id({});
        StrategySpecOptions so;
        so.scaled_base = scaled_base;
        auto s1 = make_strategy(g.graph, s, Player::One, p1, so);
        auto s2 = make_strategy(g.graph, s, Player::Two, p2, so);
        SimulationOptions opts;
        opts.keep_trace = keep_trace;
        auto rep = simulate(g.graph, s, *s1, *s2, steps, seed, opts);
        py::dict d;
        d["steps"] = rep.steps;
        d["max_norm"] = to_py(rep.max_norm);
        d["events"] = rep.events;
        py::list trace;
        for (const auto& c : rep.trace) trace.append(py::make_tuple(g.graph.vertex(c.vertex).name, to_py(c.level)));
        d["trace"] = trace;
        if (rep.checks) {
          py::dict c;
          c["clean"] = rep.checks->clean();
          c["shifts"] = rep.checks->shifts;
          c["cancellations"] = rep.checks->cancellations;
          c["energy_identity_failures"] = rep.checks->energy_identity_failures;
          c["negative_counters"] = rep.checks->negative_counters;
          c["soft_bound_restore_failures"] = rep.checks->soft_bound_restore_failures;
          c["hard_bound_violations"] = rep.checks->hard_bound_violations;
          d["checks"] = c;
        }
        return d;
      },
      py::arg("game"), py::arg("steps"), py::arg("seed") = 0, py::arg("p1") = "random", py::arg("p2") = "random",
      py::arg("scaled_base") = "", py::arg("keep_trace") = false);
}
