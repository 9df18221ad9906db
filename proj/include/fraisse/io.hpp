#pragma once

// JSON and DOT serialization for every artifact type. Loaders validate their
// input and raise ContractViolation naming the offending JSON pointer.

#include "fraisse/engine.hpp"
#include "fraisse/graph.hpp"
#include "fraisse/graph_ops.hpp"
#include "fraisse/simplicial.hpp"

#include <json.hpp>

#include <string>

namespace fraisse {

using Json = nlohmann::json;

/// Parses text; a syntax error becomes a ContractViolation mentioning `origin`.
Json parse_json(const std::string& text, const std::string& origin = "input");
Json load_json_file(const std::string& path);

/// Json number when it fits in 64 bits, decimal string otherwise.
Json integer_to_json(const Integer& x);
Integer integer_from_json(const Json& j, const std::string& path = "");

Json to_json(const Graph& g);
Graph graph_from_json(const Json& j, const std::string& path = "");

Json to_json(const GraphMorphism& m);
GraphMorphism morphism_from_json(const Json& j, const std::string& path = "");
/// Just the {"a": "x"} assignment, for maps whose ends are known.
Json assignment_to_json(const GraphMorphism& m);
GraphMorphism assignment_from_json(const Json& j, const Graph& source, const Graph& target,
                                   const std::string& path = "");

Json to_json(const AmalgamSquare& sq);
/// Also validates the square.
AmalgamSquare square_from_json(const Json& j, const std::string& path = "");

Json to_json(const CylinderResult& c);
Json to_json(const LocalRefinement& r);
Json to_json(const CliqueProduct& p);

Json to_json(const EnumerationBudget& b);
EnumerationBudget budget_from_json(const Json& j, const std::string& path = "");

Json to_json(const Tower& t);
/// Rebuilds and validates a tower written by to_json.
Tower tower_from_json(const Json& j, const std::string& path = "");

Json to_json(const Witness& w);
Json to_json(const Intertwiner& it);
Intertwiner intertwiner_from_json(const Json& j, const std::string& path = "");

Json to_json(const PlainTower& t);
PlainTower plain_tower_from_json(const Json& j, const std::string& path = "");
Json to_json(const OpenTowerMap& m);
OpenTowerMap open_map_from_json(const Json& j, const std::string& path = "");

Json to_json(const SimplicialComplex& c);
SimplicialComplex complex_from_json(const Json& j, const std::string& path = "");
Json to_json(const SimplicialMap& f);
SimplicialMap simplicial_map_from_json(const Json& j, const std::string& path = "");
Json to_json(const SimplicialSquare& sq);
Json to_json(const Chain& z);
Chain chain_from_json(const Json& j, const std::string& path = "");
Json to_json(const HomologyReport& h);

/// Undirected DOT with reflexive loops omitted.
std::string to_dot(const Graph& g, const std::string& name = "G");

}  // namespace fraisse
