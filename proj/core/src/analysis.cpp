#include "detail/analysis.hpp"

#include <algorithm>

#include "detail/bits.hpp"

namespace csr::detail {

ConfigSemantics analyze_config(const ConfigStructure& s, Mask x) {
    ConfigSemantics cs;
    cs.mask = x;
    cs.preds.assign(static_cast<std::size_t>(s.event_count()), 0);
    cs.depth.assign(static_cast<std::size_t>(s.event_count()), 0);

    // d <= e iff every configuration Y <= X containing e also contains d,
    // so the predecessor set of e is the intersection of all such Y.
    for_each_bit(x, [&](int e) { cs.preds[static_cast<std::size_t>(e)] = x; });
    for (Mask y : s.configs()) {
        if (!subset(y, x)) continue;
        for_each_bit(y, [&](int e) { cs.preds[static_cast<std::size_t>(e)] &= y; });
    }

    // Longest-chain depth, processing events by predecessor-set size; a strict
    // predecessor always has a strictly smaller set when <= is antisymmetric.
    std::vector<int> events;
    for_each_bit(x, [&](int e) { events.push_back(e); });
    std::sort(events.begin(), events.end(), [&](int a, int b) {
        int pa = popcount(cs.preds[static_cast<std::size_t>(a)]);
        int pb = popcount(cs.preds[static_cast<std::size_t>(b)]);
        return pa != pb ? pa < pb : a < b;
    });
    for (int e : events) {
        Mask strict = cs.preds[static_cast<std::size_t>(e)] & ~bit(e);
        int best = 0;
        bool cyclic = false;
        for_each_bit(strict, [&](int d) {
            if (cs.depth[static_cast<std::size_t>(d)] == 0) cyclic = true;
            best = std::max(best, cs.depth[static_cast<std::size_t>(d)]);
        });
        if (cyclic) {
            throw InputError("causality is cyclic within configuration " + s.render(x) +
                             "; the structure is not stable");
        }
        cs.depth[static_cast<std::size_t>(e)] = best + 1;
        cs.max_depth = std::max(cs.max_depth, best + 1);
        if (strict == 0) cs.min_mask |= bit(e);
    }
    return cs;
}

Analysis::Analysis(const ConfigStructure& s) {
    sem.reserve(static_cast<std::size_t>(s.config_count()));
    for (Mask x : s.configs()) sem.push_back(analyze_config(s, x));
}

bool step_diff_ok(const ConfigSemantics& larger, Mask diff) {
    bool ok = true;
    for_each_bit(diff, [&](int e) {
        if (larger.preds[static_cast<std::size_t>(e)] & diff & ~bit(e)) ok = false;
    });
    return ok;
}

}  // namespace csr::detail
