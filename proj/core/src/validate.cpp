#include "csr/validate.hpp"

#include <algorithm>
#include <sstream>

#include "detail/bits.hpp"

namespace csr {

namespace {

std::string braces(const Configuration& ids) {
    std::ostringstream out;
    out << '{';
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (i) out << ',';
        out << ids[i];
    }
    out << '}';
    return out.str();
}

int first_superset(const std::vector<Mask>& configs, Mask u) {
    for (std::size_t i = 0; i < configs.size(); ++i) {
        if (detail::subset(u, configs[i])) return static_cast<int>(i);
    }
    return -1;
}

}  // namespace

ValidationReport validate(const ConfigStructure& s, const Limits& limits) {
    if (s.event_count() > limits.max_events) {
        throw CapacityError("structure has " + std::to_string(s.event_count()) +
                            " events; the guard allows " + std::to_string(limits.max_events));
    }
    if (s.config_count() > limits.max_configs) {
        throw CapacityError("structure has " + std::to_string(s.config_count()) +
                            " configurations; the guard allows " + std::to_string(limits.max_configs));
    }

    ValidationReport r;
    const std::vector<Mask>& cfgs = s.configs();
    auto member = [&](Mask m) { return std::binary_search(cfgs.begin(), cfgs.end(), m); };

    r.rooted = member(0);

    r.connected = true;
    for (Mask x : cfgs) {
        if (x == 0) continue;
        bool ok = false;
        detail::for_each_bit(x, [&](int e) {
            if (!ok && member(x & ~detail::bit(e))) ok = true;
        });
        if (!ok) {
            r.connected = false;
            r.connected_witness = s.ids_of(x);
            break;
        }
    }

    // Bounded-union/-intersection closure needs "is X u Y below some Z".
    // With few events a superset-marking table answers that in O(1); beyond
    // that fall back to scanning the family.
    const int n = s.event_count();
    std::vector<char> dominated;
    const bool use_table = n <= 22;
    if (use_table) {
        dominated.assign(std::size_t{1} << n, 0);
        for (Mask z : cfgs) dominated[z] = 1;
        for (int b = 0; b < n; ++b) {
            const Mask high = detail::bit(b);
            for (Mask m = 0; m < (Mask{1} << n); ++m) {
                if (!(m & high) && dominated[m | high]) dominated[m] = 1;
            }
        }
    }
    auto is_bounded = [&](Mask u) {
        if (use_table) return dominated[u] != 0;
        return first_superset(cfgs, u) >= 0;
    };

    r.bounded_unions = true;
    r.bounded_intersections = true;
    r.prime_intersections = true;
    const int m = s.config_count();
    for (int i = 0; i < m; ++i) {
        for (int j = i; j < m; ++j) {
            Mask x = cfgs[static_cast<std::size_t>(i)];
            Mask y = cfgs[static_cast<std::size_t>(j)];
            Mask u = x | y;
            Mask inter = x & y;
            bool inter_in = member(inter);
            if (r.prime_intersections && !inter_in) {
                r.prime_intersections = false;
                r.prime_witness = {s.ids_of(x), s.ids_of(y)};
            }
            if ((r.bounded_unions || r.bounded_intersections) && is_bounded(u)) {
                if (r.bounded_unions && !member(u)) {
                    r.bounded_unions = false;
                    Mask z = cfgs[static_cast<std::size_t>(first_superset(cfgs, u))];
                    r.union_witness = {s.ids_of(x), s.ids_of(y), s.ids_of(z)};
                }
                if (r.bounded_intersections && !inter_in) {
                    r.bounded_intersections = false;
                    Mask z = cfgs[static_cast<std::size_t>(first_superset(cfgs, u))];
                    r.intersection_witness = {s.ids_of(x), s.ids_of(y), s.ids_of(z)};
                }
            }
            if (!r.bounded_unions && !r.bounded_intersections && !r.prime_intersections) break;
        }
        if (!r.bounded_unions && !r.bounded_intersections && !r.prime_intersections) break;
    }
    return r;
}

std::string ValidationReport::to_text() const {
    std::ostringstream out;
    auto line = [&](const char* name, bool pass, const std::string& witness) {
        out << name << ": " << (pass ? "PASS" : "FAIL");
        if (!pass && !witness.empty()) out << " [" << witness << "]";
        out << '\n';
    };
    line("rooted", rooted, "the empty configuration is missing");
    line("connected", connected,
         connected_witness ? "X=" + braces(*connected_witness) : std::string());
    line("boundedUnions", bounded_unions,
         union_witness ? "X=" + braces((*union_witness)[0]) + " Y=" + braces((*union_witness)[1]) +
                             " Z=" + braces((*union_witness)[2])
                       : std::string());
    line("boundedIntersections", bounded_intersections,
         intersection_witness
             ? "X=" + braces((*intersection_witness)[0]) + " Y=" + braces((*intersection_witness)[1]) +
                   " Z=" + braces((*intersection_witness)[2])
             : std::string());
    line("stable", stable(), "");
    line("primeIntersections", prime_intersections,
         prime_witness ? "X=" + braces((*prime_witness)[0]) + " Y=" + braces((*prime_witness)[1])
                       : std::string());
    return out.str();
}

void require_stable(const ConfigStructure& s, const Limits& limits) {
    ValidationReport r = validate(s, limits);
    if (r.stable()) return;
    const char* axiom = !r.rooted              ? "rooted"
                        : !r.connected         ? "connected"
                        : !r.bounded_unions    ? "boundedUnions"
                                               : "boundedIntersections";
    throw InputError(std::string("structure is not stable: axiom '") + axiom + "' fails");
}

}  // namespace csr
