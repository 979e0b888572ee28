#include "mwg/io.hpp"

#include "mwg/errors.hpp"

#include <fstream>
#include <sstream>

namespace mwg {

using nlohmann::json;

namespace {
const BigInt kSafeInteger = BigInt(1) << 53;
}

json bigint_to_json(const BigInt& value) {
  if (abs(value) <= kSafeInteger) return value.convert_to<long long>();
  return value.str();
}

BigInt bigint_from_json(const json& value) {
  if (value.is_number_integer()) return BigInt(value.get<long long>());
  if (value.is_number_unsigned()) return BigInt(value.get<unsigned long long>());
  if (value.is_string()) return parse_bigint(value.get<std::string>());
  throw InputError("expected an integer, got " + value.dump());
}

json weight_to_json(const WeightVector& w) {
  json arr = json::array();
  for (const auto& e : w.entries()) arr.push_back(bigint_to_json(e));
  return arr;
}

WeightVector weight_from_json(const json& value) {
  if (!value.is_array()) throw InputError("weight must be an array, got " + value.dump());
  std::vector<BigInt> entries;
  for (const auto& e : value) entries.push_back(bigint_from_json(e));
  return WeightVector(std::move(entries));
}

json game_to_json(const GameGraph& g, const std::optional<std::string>& start) {
  json doc;
  doc["version"] = kGameFormatVersion;
  doc["dimension"] = g.dimension();
  if (start) doc["start"] = *start;
  json vs = json::array();
  for (const auto& v : g.vertices()) vs.push_back({{"id", v.name}, {"owner", to_int(v.owner)}});
  doc["vertices"] = vs;
  json es = json::array();
  for (const auto& e : g.edges()) {
    es.push_back({{"src", g.vertex(e.src).name},
                  {"dst", g.vertex(e.dst).name},
                  {"weight", weight_to_json(e.weight)}});
  }
  doc["edges"] = es;
  return doc;
}

GameDocument game_from_json(const json& doc) {
  try {
    if (!doc.is_object()) throw InputError("game document must be a JSON object");
    if (doc.contains("version") && doc.at("version").get<int>() != kGameFormatVersion)
      throw InputError("unsupported game format version " + doc.at("version").dump());
    GraphSpec spec;
    long long d = doc.at("dimension").get<long long>();
    if (d < 0) throw InputError("negative dimension");
    spec.dimension = static_cast<std::size_t>(d);
    for (const auto& v : doc.at("vertices")) {
      int owner = v.at("owner").get<int>();
      if (owner != 1 && owner != 2) throw InputError("owner must be 1 or 2, got " + v.dump());
      spec.vertices.push_back({v.at("id").get<std::string>(), static_cast<Player>(owner)});
    }
    for (const auto& e : doc.at("edges")) {
      spec.edges.push_back({e.at("src").get<std::string>(), e.at("dst").get<std::string>(),
                            weight_from_json(e.at("weight"))});
    }
    GameDocument out{GameGraph(spec), std::nullopt};
    if (doc.contains("start")) {
      out.start = doc.at("start").get<std::string>();
      out.graph.vertex_id(*out.start);
    }
    return out;
  } catch (const json::exception& ex) {
    throw InputError(std::string("malformed game document: ") + ex.what());
  }
}

GameDocument parse_game(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& ex) {
    throw InputError(std::string("invalid JSON: ") + ex.what());
  }
  return game_from_json(doc);
}

GameDocument load_game(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_game(buf.str());
}

std::string dump_game(const GameGraph& g, const std::optional<std::string>& start) {
  return game_to_json(g, start).dump(2);
}

std::string to_dot(const GameGraph& g) {
  std::ostringstream out;
  out << "digraph game {\n";
  for (const auto& v : g.vertices()) {
    out << "  \"" << v.name << "\" [shape=" << (v.owner == Player::One ? "triangle" : "box")
        << "];\n";
  }
  for (const auto& e : g.edges()) {
    out << "  \"" << g.vertex(e.src).name << "\" -> \"" << g.vertex(e.dst).name
        << "\" [label=\"" << to_string(e.weight) << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

VertexId start_vertex(const GameDocument& doc) {
  if (doc.start) return doc.graph.vertex_id(*doc.start);
  if (doc.graph.num_vertices() == 0) throw InputError("game has no vertices");
  return 0;
}

}  // namespace mwg
