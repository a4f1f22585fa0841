#include "csr/moves.hpp"

#include <algorithm>
#include <sstream>

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

std::vector<std::string> label_multiset(const ConfigStructure& s, Mask diff) {
    std::vector<std::string> labels;
    detail::for_each_bit(diff, [&](int e) { labels.push_back(s.event(e).label); });
    std::sort(labels.begin(), labels.end());
    return labels;
}

Move make_move(const ConfigStructure& s, Direction dir, MoveKind kind, Mask source, Mask target,
               Mask diff, std::optional<int> depth = std::nullopt) {
    Move mv;
    mv.direction = dir;
    mv.kind = kind;
    mv.source = s.ids_of(source);
    mv.target = s.ids_of(target);
    mv.labels = label_multiset(s, diff);
    mv.depth = depth;
    return mv;
}

// Enumerates every (larger, smaller) configuration pair around x and hands
// the pair to the sink with the semantics of the larger side.
template <typename F>
void scan_neighbours(const ConfigStructure& s, Mask x, Direction dir, F&& sink) {
    for (Mask other : s.configs()) {
        Mask larger = dir == Direction::Forward ? other : x;
        Mask smaller = dir == Direction::Forward ? x : other;
        if (larger == smaller || !detail::subset(smaller, larger)) continue;
        sink(larger, smaller, larger & ~smaller);
    }
}

}  // namespace

std::vector<Move> singles(const ConfigStructure& s, const Configuration& x, Direction dir) {
    Mask mask = require_config(s, x);
    std::vector<Move> out;
    scan_neighbours(s, mask, dir, [&](Mask larger, Mask smaller, Mask diff) {
        if (detail::popcount(diff) != 1) return;
        Mask target = dir == Direction::Forward ? larger : smaller;
        out.push_back(make_move(s, dir, MoveKind::Single, mask, target, diff));
    });
    return out;
}

std::vector<Move> steps(const ConfigStructure& s, const Configuration& x, Direction dir) {
    Mask mask = require_config(s, x);
    std::vector<Move> out;
    scan_neighbours(s, mask, dir, [&](Mask larger, Mask smaller, Mask diff) {
        if (!detail::step_diff_ok(detail::analyze_config(s, larger), diff)) return;
        Mask target = dir == Direction::Forward ? larger : smaller;
        out.push_back(make_move(s, dir, MoveKind::Step, mask, target, diff));
    });
    return out;
}

std::vector<Move> depth_singles(const ConfigStructure& s, const Configuration& x, Direction dir) {
    Mask mask = require_config(s, x);
    std::vector<Move> out;
    scan_neighbours(s, mask, dir, [&](Mask larger, Mask smaller, Mask diff) {
        if (detail::popcount(diff) != 1) return;
        detail::ConfigSemantics cs = detail::analyze_config(s, larger);
        int e = std::countr_zero(diff);
        Mask target = dir == Direction::Forward ? larger : smaller;
        out.push_back(make_move(s, dir, MoveKind::DepthSingle, mask, target, diff,
                                cs.depth[static_cast<std::size_t>(e)]));
    });
    return out;
}

std::vector<Move> special_steps(const ConfigStructure& s, const Configuration& x, Direction dir,
                                StepConstraint constraint) {
    Mask mask = require_config(s, x);
    std::vector<Move> out;
    scan_neighbours(s, mask, dir, [&](Mask larger, Mask smaller, Mask diff) {
        detail::ConfigSemantics cs = detail::analyze_config(s, larger);
        if (!detail::step_diff_ok(cs, diff)) return;
        int first = std::countr_zero(diff);
        bool homogeneous = true;
        bool equidepth = true;
        detail::for_each_bit(diff, [&](int e) {
            if (s.label_of(e) != s.label_of(first)) homogeneous = false;
            if (cs.depth[static_cast<std::size_t>(e)] != cs.depth[static_cast<std::size_t>(first)]) {
                equidepth = false;
            }
        });
        if (!homogeneous) return;
        if (constraint == StepConstraint::EquidepthHomogeneous && !equidepth) return;
        MoveKind kind = constraint == StepConstraint::Homogeneous ? MoveKind::HomogeneousStep
                                                                  : MoveKind::EquidepthStep;
        Mask target = dir == Direction::Forward ? larger : smaller;
        out.push_back(make_move(s, dir, kind, mask, target, diff));
    });
    return out;
}

std::string_view direction_name(Direction dir) {
    return dir == Direction::Forward ? "FWD" : "REV";
}

std::string_view move_kind_name(MoveKind kind) {
    switch (kind) {
        case MoveKind::Single: return "single";
        case MoveKind::Step: return "step";
        case MoveKind::DepthSingle: return "dsingle";
        case MoveKind::HomogeneousStep: return "hstep";
        case MoveKind::EquidepthStep: return "ehstep";
    }
    return "?";
}

std::string render_move(const Move& move) {
    std::ostringstream out;
    out << direction_name(move.direction) << " kind=" << move_kind_name(move.kind)
        << " label(s)=";
    for (std::size_t i = 0; i < move.labels.size(); ++i) {
        if (i) out << ',';
        out << move.labels[i];
    }
    if (move.depth) out << " k=" << *move.depth;
    out << " target=" << render_configuration(move.target);
    return out.str();
}

}  // namespace csr
