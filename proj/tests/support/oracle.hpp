// Brute-force reference checkers, deliberately independent of the library's
// fixpoint machinery: their own set-of-strings representation, their own
// causality/depth/move enumeration, and relation search by enumerating every
// subset of the candidate universe.
#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "csr/equivalence.hpp"
#include "csr/structure.hpp"

namespace oracle {

using IdSet = std::set<std::string>;

struct Structure {
    std::vector<IdSet> configs;
    std::map<std::string, std::string> label;
};

Structure from(const csr::ConfigStructure& s);

std::size_t pair_universe(const Structure& c, const Structure& d);
std::size_t triple_universe(const Structure& c, const Structure& d);

/// Is there a bisimulation of the kind containing the root pair?  Enumerates
/// all subsets of configs(c) x configs(d); throws csr::CapacityError when the
/// universe exceeds max_slots.
bool equivalent(csr::EquivalenceKind kind, const Structure& c, const Structure& d,
                std::size_t max_slots = 22);

/// HH by enumeration of all subsets of the (X, Y, f) triple universe.
bool hh_equivalent(const Structure& c, const Structure& d, std::size_t max_slots = 22);

}  // namespace oracle
