#pragma once

#include <map>

#include "csr/equivalence.hpp"

namespace csr {

/// A named pair of terms with the expected verdict for every kind.  The
/// built-in corpus collects the classic separating examples: auto-concurrency,
/// the interleaving law, the absorption law, and their depth variants.
struct CorpusEntry {
    std::string name;
    std::string note;
    std::string left_term;
    std::string right_term;
    std::map<EquivalenceKind, bool> expected;
};

const std::vector<CorpusEntry>& builtin_corpus();

}  // namespace csr
