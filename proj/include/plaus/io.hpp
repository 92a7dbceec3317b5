#pragma once

#include "plaus/model.hpp"

#include <json.hpp>

#include <string>

namespace plaus
{

/// Parses the model JSON dialect:
///   {"worlds": [{"id": "w1", "val": ["p"]}, ...], "agents": ["a"], "plaus": {"a": [["w2", "w1"]]}}
/// A pair [x, y] means x >=_a y. Edges are closed, then the model is validated.
/// Throws ParseError or ValidationError.
[[nodiscard]] PlausibilityModel load_model( const std::string& document );
/// With check = false the model is closed but not validated; see validate().
[[nodiscard]] PlausibilityModel load_model_json( const nlohmann::json& document, bool check = true );
[[nodiscard]] PlausibilityModel load_model_file( const std::string& path );

/// Sorted worlds, sorted agents, every non-reflexive pair of the closed relations.
[[nodiscard]] nlohmann::json model_to_json( const PlausibilityModel& model );

/// Graphviz rendering: one node per world labelled with its valuation, and one
/// edge per non-reflexive pair per agent.
[[nodiscard]] std::string model_to_dot( const PlausibilityModel& model );

} // namespace plaus
