#pragma once

#include "mwg/game.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>

namespace mwg {

inline constexpr int kGameFormatVersion = 1;

// A game file: the graph plus an optional designated start vertex.
struct GameDocument {
  GameGraph graph;
  std::optional<std::string> start;
};

// Integers within +-2^53 are written as JSON numbers, larger ones as
// decimal strings. Both forms are accepted on input.
nlohmann::json bigint_to_json(const BigInt& value);
BigInt bigint_from_json(const nlohmann::json& value);

nlohmann::json weight_to_json(const WeightVector& w);
WeightVector weight_from_json(const nlohmann::json& value);

nlohmann::json game_to_json(const GameGraph& g, const std::optional<std::string>& start = {});
GameDocument game_from_json(const nlohmann::json& doc);

GameDocument load_game(const std::string& path);
GameDocument parse_game(const std::string& text);
std::string dump_game(const GameGraph& g, const std::optional<std::string>& start = {});

// Player-1 vertices as triangles, Player-2 vertices as boxes, edges
// labelled by their weight tuple.
std::string to_dot(const GameGraph& g);

// Start vertex of a document: the explicit field, else the smallest id.
VertexId start_vertex(const GameDocument& doc);

}  // namespace mwg
