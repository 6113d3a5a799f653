#pragma once

// JSON and compact text forms of graphs and configurations.
//
//   graph:  {"level", "boundary", "vertices": [[a,b],...], "edges": [[i,j],...], "beta"}
//   config: {"level", "boundary", "chips": [...]}
//   text:   "level boundary c0 c1 ..."

#include "gasketpile/gasket.hpp"
#include "gasketpile/linalg.hpp"
#include "gasketpile/sandpile.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>

namespace gasketpile {

using Json = nlohmann::ordered_json;

Json graph_to_json(const GasketGraph& g);
Json config_to_json(const Configuration& c);
Json chips_to_json(const ChipVector& v);
Json invariants_to_json(const InvariantFactors& f);

/// Validates the chip count against the named graph and rejects negative entries.
Configuration config_from_json(const Json& j);

std::string config_to_text(const Configuration& c);
Configuration config_from_text(const std::string& s);

/// Accepts either form, detected by the first non-blank character.
Configuration parse_config(const std::string& s);
Configuration read_config(std::istream& in);

}  // namespace gasketpile
