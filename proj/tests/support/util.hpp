#pragma once

#include <string>
#include <vector>

#include "csr/structure.hpp"
#include "csr/term.hpp"

namespace testutil {

inline csr::ConfigStructure S(const std::string& term) { return csr::translate(term); }

inline csr::Configuration ids(std::initializer_list<const char*> list) {
    csr::Configuration out;
    for (const char* id : list) out.emplace_back(id);
    return out;
}

// Figure-eight style or-causation families used across the suite.
inline csr::ConfigStructure or_switch_stable() {
    return csr::ConfigStructure::make(
        {{"0", "0"}, {"1", "1"}, {"b", "b"}},
        {{}, {"0"}, {"1"}, {"0", "1"}, {"0", "b"}, {"1", "b"}});
}

inline csr::ConfigStructure or_switch_unstable() {
    return csr::ConfigStructure::make(
        {{"0", "0"}, {"1", "1"}, {"b", "b"}},
        {{}, {"0"}, {"1"}, {"0", "1"}, {"0", "b"}, {"1", "b"}, {"0", "1", "b"}});
}

}  // namespace testutil
