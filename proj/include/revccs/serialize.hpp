#pragma once

#include "revccs/equivalences.hpp"
#include "revccs/rccs.hpp"
#include "revccs/structures.hpp"

#include <json.hpp>

#include <string>

namespace revccs {

using Json = nlohmann::ordered_json;

Json to_json(const ConfigurationStructure &c);
Json to_json(const IdentifiedStructure &s);
Json to_json(const LtsGraph &g);
Json to_json(const Transition &t);

// Configuration lattice: one node per configuration, edges for single-event extensions.
std::string to_dot(const ConfigurationStructure &c, const std::string &name = "structure");
std::string to_dot(const IdentifiedStructure &s, const std::string &name = "structure");
std::string to_dot(const LtsGraph &g, const std::string &name = "lts");

std::string to_text(const ConfigurationStructure &c);
std::string to_text(const IdentifiedStructure &s);

std::string config_string(const ConfigurationStructure &c, const EventSet &x);

// States are rendered from the models the result was computed on.
Json to_json(const BisimResult &r, const StructureModel &m1, const StructureModel &m2);
Json to_json(const BisimResult &r, const ProcessModel &m1, const ProcessModel &m2);
std::string to_text(const BisimResult &r, const StructureModel &m1, const StructureModel &m2);
std::string to_text(const BisimResult &r, const ProcessModel &m1, const ProcessModel &m2);

}  // namespace revccs
