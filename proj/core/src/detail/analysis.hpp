#pragma once

#include <vector>

#include "csr/structure.hpp"

namespace csr::detail {

/// Per-configuration causal data.  preds[e] holds every d with d <= e within
/// the configuration (including e itself); depth[e] is the length of the
/// longest strict causal chain ending at e.
struct ConfigSemantics {
    Mask mask = 0;
    std::vector<Mask> preds;
    std::vector<int> depth;
    Mask min_mask = 0;
    int max_depth = 0;

    bool leq(int d, int e) const { return (preds[static_cast<std::size_t>(e)] >> d) & 1; }
    bool strict(int d, int e) const { return d != e && leq(d, e); }
    bool concurrent(int d, int e) const { return !strict(d, e) && !strict(e, d); }
};

/// Throws InputError when the strict order is cyclic (only possible on
/// non-stable structures).
ConfigSemantics analyze_config(const ConfigStructure& s, Mask x);

/// Semantics of every configuration, indexed in canonical configuration order.
struct Analysis {
    explicit Analysis(const ConfigStructure& s);
    std::vector<ConfigSemantics> sem;
};

/// True when the events of diff are pairwise concurrent within the larger
/// configuration; diff of size one is trivially fine.
bool step_diff_ok(const ConfigSemantics& larger, Mask diff);

}  // namespace csr::detail
