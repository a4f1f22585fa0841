#pragma once

#include <string>

#include "csr/structure.hpp"

namespace csr {

/// Structure exchange document: {"events":[{"id","label"}...],
/// "configurations":[[ids...]...]} with ids sorted inside each configuration.
/// Duplicate configurations, duplicate ids, and unsorted id lists are
/// rejected.
ConfigStructure structure_from_json(const std::string& text);

/// Canonical rendering: events sorted by id, configurations sorted by size
/// then id list.  Loading the output reproduces the structure exactly.
std::string structure_to_json(const ConfigStructure& s);

ConfigStructure load_structure(const std::string& path);
void save_structure(const ConfigStructure& s, const std::string& path);

}  // namespace csr
