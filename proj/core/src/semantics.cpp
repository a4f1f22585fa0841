#include "csr/semantics.hpp"

#include <algorithm>
#include <limits>

#include "csr/validate.hpp"
#include "detail/analysis.hpp"
#include "detail/bits.hpp"

namespace csr {

namespace {

Mask require_config(const ConfigStructure& s, const Configuration& x) {
    auto mask = s.mask_of(x);
    if (!mask || !s.config_index(*mask)) {
        throw InputError(render_configuration(x) + " is not a configuration of the structure");
    }
    return *mask;
}

}  // namespace

CausalContext causality(const ConfigStructure& s, const Configuration& x) {
    Mask mask = require_config(s, x);
    detail::ConfigSemantics cs = detail::analyze_config(s, mask);

    CausalContext ctx;
    ctx.configuration = s.ids_of(mask);
    detail::for_each_bit(mask, [&](int e) {
        detail::for_each_bit(cs.preds[static_cast<std::size_t>(e)], [&](int d) {
            ctx.leq.emplace_back(s.event(d).id, s.event(e).id);
            if (d != e) ctx.strictly.emplace_back(s.event(d).id, s.event(e).id);
        });
    });
    std::sort(ctx.leq.begin(), ctx.leq.end());
    std::sort(ctx.strictly.begin(), ctx.strictly.end());

    std::vector<int> events;
    detail::for_each_bit(mask, [&](int e) { events.push_back(e); });
    for (std::size_t i = 0; i < events.size(); ++i) {
        for (std::size_t j = i + 1; j < events.size(); ++j) {
            if (cs.concurrent(events[i], events[j])) {
                ctx.concurrent.emplace_back(s.event(events[i]).id, s.event(events[j]).id);
            }
        }
    }
    return ctx;
}

DepthMap depths(const ConfigStructure& s, const Configuration& x) {
    Mask mask = require_config(s, x);
    detail::ConfigSemantics cs = detail::analyze_config(s, mask);
    DepthMap dm;
    dm.configuration = s.ids_of(mask);
    detail::for_each_bit(mask, [&](int e) {
        dm.depth[s.event(e).id] = cs.depth[static_cast<std::size_t>(e)];
    });
    return dm;
}

Configuration minimal_events(const ConfigStructure& s, const Configuration& x) {
    Mask mask = require_config(s, x);
    return s.ids_of(detail::analyze_config(s, mask).min_mask);
}

ConfigStructure lift(const ConfigStructure& s, const Configuration& m) {
    Mask m_mask = require_config(s, m);
    if (detail::analyze_config(s, m_mask).min_mask != m_mask) {
        throw InputError(render_configuration(m) + " is not entirely minimal");
    }

    std::vector<Mask> residuals;
    Mask used = 0;
    for (Mask x : s.configs()) {
        if (!detail::subset(m_mask, x)) continue;
        if (detail::analyze_config(s, x).min_mask != m_mask) continue;
        residuals.push_back(x & ~m_mask);
        used |= x & ~m_mask;
    }

    // Compress the surviving events into fresh bit positions.
    std::vector<Event> events;
    std::vector<int> new_bit(static_cast<std::size_t>(s.event_count()), -1);
    detail::for_each_bit(used, [&](int b) {
        new_bit[static_cast<std::size_t>(b)] = static_cast<int>(events.size());
        events.push_back(s.event(b));
    });
    for (Mask& r : residuals) {
        Mask packed = 0;
        detail::for_each_bit(r, [&](int b) { packed |= detail::bit(new_bit[static_cast<std::size_t>(b)]); });
        r = packed;
    }
    return ConfigStructure::from_masks(std::move(events), std::move(residuals));
}

Configuration slice_range(const ConfigStructure& s, const Configuration& x, int m, int n) {
    if (m < 1 || m > n) {
        throw InputError("slice bounds must satisfy 1 <= m <= n");
    }
    Mask mask = require_config(s, x);
    detail::ConfigSemantics cs = detail::analyze_config(s, mask);
    Mask keep = 0;
    detail::for_each_bit(mask, [&](int e) {
        int d = cs.depth[static_cast<std::size_t>(e)];
        if (d >= m && d <= n) keep |= detail::bit(e);
    });
    return s.ids_of(keep);
}

Configuration slice_leq(const ConfigStructure& s, const Configuration& x, int n) {
    return slice_range(s, x, 1, n);
}

Configuration slice_geq(const ConfigStructure& s, const Configuration& x, int m) {
    return slice_range(s, x, m, std::numeric_limits<int>::max());
}

AutoConcurrencyReport auto_concurrency(const ConfigStructure& s, const Limits& limits) {
    require_stable(s, limits);
    AutoConcurrencyReport report;
    for (Mask x : s.configs()) {
        if (report.has_auto_concurrency && report.has_equidepth_auto_concurrency) break;
        detail::ConfigSemantics cs = detail::analyze_config(s, x);
        std::vector<int> events;
        detail::for_each_bit(x, [&](int e) { events.push_back(e); });
        for (std::size_t i = 0; i < events.size(); ++i) {
            for (std::size_t j = i + 1; j < events.size(); ++j) {
                int d = events[i];
                int e = events[j];
                if (s.label_of(d) != s.label_of(e) || !cs.concurrent(d, e)) continue;
                if (!report.has_auto_concurrency) {
                    report.has_auto_concurrency = true;
                    report.auto_witness = {s.ids_of(x), s.event(d).id, s.event(e).id};
                }
                if (!report.has_equidepth_auto_concurrency &&
                    cs.depth[static_cast<std::size_t>(d)] == cs.depth[static_cast<std::size_t>(e)]) {
                    report.has_equidepth_auto_concurrency = true;
                    report.equidepth_witness = {s.ids_of(x), s.event(d).id, s.event(e).id};
                }
            }
        }
    }
    return report;
}

}  // namespace csr
