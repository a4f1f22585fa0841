#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "csr/equivalence.hpp"
#include "csr/semantics.hpp"
#include "json.hpp"

namespace csr {

namespace {

using nlohmann::json;

/// Everything the kind's transfer clauses quantify over, enumerated with the
/// plain per-configuration API.
std::vector<Move> alphabet_moves(EquivalenceKind kind, const ConfigStructure& s,
                                 const Configuration& x) {
    std::vector<Move> out;
    auto add = [&](std::vector<Move> moves) {
        out.insert(out.end(), std::make_move_iterator(moves.begin()),
                   std::make_move_iterator(moves.end()));
    };
    switch (kind) {
        case EquivalenceKind::IB:
            add(singles(s, x, Direction::Forward));
            break;
        case EquivalenceKind::SB:
            add(steps(s, x, Direction::Forward));
            break;
        case EquivalenceKind::DB:
            add(depth_singles(s, x, Direction::Forward));
            break;
        case EquivalenceKind::RB:
            add(singles(s, x, Direction::Forward));
            add(singles(s, x, Direction::Reverse));
            break;
        case EquivalenceKind::RSB:
            add(steps(s, x, Direction::Forward));
            add(steps(s, x, Direction::Reverse));
            break;
        case EquivalenceKind::RHSB:
            add(singles(s, x, Direction::Forward));
            add(special_steps(s, x, Direction::Reverse, StepConstraint::Homogeneous));
            break;
        case EquivalenceKind::RHESB:
            add(singles(s, x, Direction::Forward));
            add(special_steps(s, x, Direction::Reverse, StepConstraint::EquidepthHomogeneous));
            break;
        case EquivalenceKind::RDB:
            add(depth_singles(s, x, Direction::Forward));
            add(depth_singles(s, x, Direction::Reverse));
            break;
        case EquivalenceKind::HH:
            add(singles(s, x, Direction::Forward));
            add(singles(s, x, Direction::Reverse));
            break;
    }
    return out;
}

/// Observable part of a move: what the defender has to match.
using MoveKey = std::tuple<Direction, MoveKind, std::vector<std::string>, std::optional<int>>;

MoveKey key_of(const Move& m) { return {m.direction, m.kind, m.labels, m.depth}; }

std::string describe_move(Side side, const Move& m) {
    return std::string(side_name(side)) + " " + render_move(m);
}

// -- verify_relation --------------------------------------------------------

struct PairSet {
    std::set<std::pair<Configuration, Configuration>> pairs;
    bool contains(const Configuration& x, const Configuration& y) const {
        return pairs.count({x, y}) != 0;
    }
};

bool clauses_hold(EquivalenceKind kind, const ConfigStructure& left, const ConfigStructure& right,
                  const Configuration& x, const Configuration& y, const PairSet& rel,
                  std::string* violation) {
    for (Side side : {Side::Left, Side::Right}) {
        const ConfigStructure& att = side == Side::Left ? left : right;
        const ConfigStructure& def = side == Side::Left ? right : left;
        const Configuration& att_cfg = side == Side::Left ? x : y;
        const Configuration& def_cfg = side == Side::Left ? y : x;
        std::vector<Move> defender = alphabet_moves(kind, def, def_cfg);
        for (const Move& mv : alphabet_moves(kind, att, att_cfg)) {
            bool matched = false;
            for (const Move& response : defender) {
                if (key_of(response) != key_of(mv)) continue;
                bool in = side == Side::Left ? rel.contains(mv.target, response.target)
                                             : rel.contains(response.target, mv.target);
                if (in) {
                    matched = true;
                    break;
                }
            }
            if (!matched) {
                if (violation) {
                    *violation = "pair (" + render_configuration(x) + ", " +
                                 render_configuration(y) + ") has unmatched attacker move " +
                                 describe_move(side, mv);
                }
                return false;
            }
        }
    }
    return true;
}

// -- HH helpers ---------------------------------------------------------------

using IsoMap = std::vector<std::pair<std::string, std::string>>;

std::optional<std::string> iso_image(const IsoMap& f, const std::string& d) {
    for (const auto& [a, b] : f) {
        if (a == d) return b;
    }
    return std::nullopt;
}

std::optional<std::string> iso_preimage(const IsoMap& f, const std::string& e) {
    for (const auto& [a, b] : f) {
        if (b == e) return a;
    }
    return std::nullopt;
}

bool strict_in(const CausalContext& ctx, const std::string& d, const std::string& e) {
    return std::binary_search(ctx.strictly.begin(), ctx.strictly.end(), std::make_pair(d, e));
}

/// Full definition-level isomorphism check between (X, <_X, labels) and
/// (Y, <_Y, labels).
bool is_isomorphism(const ConfigStructure& left, const Configuration& x,
                    const ConfigStructure& right, const Configuration& y, const IsoMap& f) {
    if (f.size() != x.size() || x.size() != y.size()) return false;
    std::set<std::string> domain, range;
    for (const auto& [d, e] : f) {
        domain.insert(d);
        range.insert(e);
        int di = left.event_index(d);
        int ei = right.event_index(e);
        if (di < 0 || ei < 0) return false;
        if (left.event(di).label != right.event(ei).label) return false;
    }
    if (domain != std::set<std::string>(x.begin(), x.end())) return false;
    if (range != std::set<std::string>(y.begin(), y.end())) return false;
    CausalContext cx = causality(left, x);
    CausalContext cy = causality(right, y);
    for (const auto& [d1, e1] : f) {
        for (const auto& [d2, e2] : f) {
            if (strict_in(cx, d1, d2) != strict_in(cy, e1, e2)) return false;
        }
    }
    return true;
}

Configuration erase_id(const Configuration& x, const std::string& id) {
    Configuration out;
    for (const std::string& v : x) {
        if (v != id) out.push_back(v);
    }
    return out;
}

std::string added_id(const Configuration& smaller, const Configuration& larger) {
    for (const std::string& id : larger) {
        if (!std::binary_search(smaller.begin(), smaller.end(), id)) return id;
    }
    return {};
}

IsoMap insert_mapping(IsoMap f, const std::string& d, const std::string& e) {
    f.emplace_back(d, e);
    std::sort(f.begin(), f.end());
    return f;
}

IsoMap erase_mapping(IsoMap f, const std::string& d) {
    f.erase(std::remove_if(f.begin(), f.end(), [&](const auto& p) { return p.first == d; }),
            f.end());
    return f;
}

struct TripleSet {
    std::map<std::pair<Configuration, Configuration>, std::set<IsoMap>> entries;
    bool contains(const Configuration& x, const Configuration& y, const IsoMap& f) const {
        auto it = entries.find({x, y});
        return it != entries.end() && it->second.count(f) != 0;
    }
};

/// Defender answers in the HH game.  A forward attacker move fixes the
/// extension for each candidate response; a reverse move determines the
/// response completely through the isomorphism.
struct HHResponse {
    Configuration x2, y2;
    IsoMap f2;
    Configuration defender_target;
};

std::vector<HHResponse> hh_responses(const ConfigStructure& left, const ConfigStructure& right,
                                     const Configuration& x, const Configuration& y,
                                     const IsoMap& f, Side side, const Move& mv) {
    std::vector<HHResponse> out;
    const ConfigStructure& def = side == Side::Left ? right : left;
    const Configuration& def_cfg = side == Side::Left ? y : x;
    if (mv.direction == Direction::Forward) {
        std::string moved = added_id(mv.source, mv.target);
        for (const Move& response : singles(def, def_cfg, Direction::Forward)) {
            if (response.labels != mv.labels) continue;
            std::string other = added_id(response.source, response.target);
            const std::string& d = side == Side::Left ? moved : other;
            const std::string& e = side == Side::Left ? other : moved;
            const Configuration& x2 = side == Side::Left ? mv.target : response.target;
            const Configuration& y2 = side == Side::Left ? response.target : mv.target;
            IsoMap f2 = insert_mapping(f, d, e);
            if (!is_isomorphism(left, x2, right, y2, f2)) continue;
            out.push_back({x2, y2, std::move(f2), response.target});
        }
        return out;
    }
    if (side == Side::Left) {
        std::string removed = added_id(mv.target, mv.source);
        auto image = iso_image(f, removed);
        if (!image) return out;
        Configuration y2 = erase_id(y, *image);
        if (!right.config_index(y2)) return out;
        out.push_back({mv.target, y2, erase_mapping(f, removed), y2});
    } else {
        std::string removed = added_id(mv.target, mv.source);
        auto pre = iso_preimage(f, removed);
        if (!pre) return out;
        Configuration x2 = erase_id(x, *pre);
        if (!left.config_index(x2)) return out;
        out.push_back({x2, mv.target, erase_mapping(f, *pre), x2});
    }
    return out;
}

// -- replay -------------------------------------------------------------------

struct Replayer {
    EquivalenceKind kind;
    const ConfigStructure& left;
    const ConfigStructure& right;
    std::string* diagnostic;

    bool fail(const std::string& why) const {
        if (diagnostic) *diagnostic = why;
        return false;
    }

    bool legal_attacker_move(const WitnessTree& node, const Configuration& att_cfg) const {
        const ConfigStructure& att = node.attacker_side == Side::Left ? left : right;
        if (node.attacker_move.source != att_cfg) return false;
        for (const Move& mv : alphabet_moves(kind, att, att_cfg)) {
            if (mv == node.attacker_move) return true;
        }
        return false;
    }

    bool run_pair(const WitnessTree& node, const Configuration& x, const Configuration& y) const {
        if (!legal_attacker_move(node, node.attacker_side == Side::Left ? x : y)) {
            return fail("illegal attacker move " +
                        describe_move(node.attacker_side, node.attacker_move));
        }
        const ConfigStructure& def = node.attacker_side == Side::Left ? right : left;
        const Configuration& def_cfg = node.attacker_side == Side::Left ? y : x;
        std::set<Configuration> legal;
        for (const Move& response : alphabet_moves(kind, def, def_cfg)) {
            if (key_of(response) == key_of(node.attacker_move)) legal.insert(response.target);
        }
        std::set<Configuration> covered;
        for (const WitnessResponse& resp : node.responses) {
            if (!legal.count(resp.target)) {
                return fail("witness answers a response " + render_configuration(resp.target) +
                            " the defender cannot make");
            }
            if (!covered.insert(resp.target).second) return fail("duplicate response branch");
            const Configuration& x2 =
                node.attacker_side == Side::Left ? node.attacker_move.target : resp.target;
            const Configuration& y2 =
                node.attacker_side == Side::Left ? resp.target : node.attacker_move.target;
            if (!run_pair(resp.next, x2, y2)) return false;
        }
        if (covered.size() != legal.size()) {
            return fail("defender response not covered after attacker move " +
                        describe_move(node.attacker_side, node.attacker_move));
        }
        return true;
    }

    bool run_hh(const WitnessTree& node, const Configuration& x, const Configuration& y,
                const IsoMap& f) const {
        if (node.attacker_move.kind != MoveKind::Single) {
            return fail("HH witnesses use single moves only");
        }
        if (!legal_attacker_move(node, node.attacker_side == Side::Left ? x : y)) {
            return fail("illegal attacker move " +
                        describe_move(node.attacker_side, node.attacker_move));
        }
        std::vector<HHResponse> legal =
            hh_responses(left, right, x, y, f, node.attacker_side, node.attacker_move);
        std::vector<char> covered(legal.size(), 0);
        for (const WitnessResponse& resp : node.responses) {
            if (!resp.iso && node.attacker_move.direction == Direction::Forward) {
                return fail("HH forward response is missing its isomorphism");
            }
            bool found = false;
            for (std::size_t i = 0; i < legal.size(); ++i) {
                if (legal[i].defender_target != resp.target) continue;
                if (resp.iso && resp.iso->mapping != legal[i].f2) continue;
                if (covered[i]) return fail("duplicate response branch");
                covered[i] = 1;
                found = true;
                if (!run_hh(resp.next, legal[i].x2, legal[i].y2, legal[i].f2)) return false;
                break;
            }
            if (!found) {
                return fail("witness answers a response " + render_configuration(resp.target) +
                            " the defender cannot make");
            }
        }
        if (std::count(covered.begin(), covered.end(), 1) != static_cast<long>(legal.size())) {
            return fail("defender response not covered after attacker move " +
                        describe_move(node.attacker_side, node.attacker_move));
        }
        return true;
    }
};

// -- json ---------------------------------------------------------------------

json move_to_json(const Move& m) {
    json j;
    j["dir"] = std::string(direction_name(m.direction));
    j["kind"] = std::string(move_kind_name(m.kind));
    j["labels"] = m.labels;
    if (m.depth) j["k"] = *m.depth;
    j["source"] = m.source;
    j["target"] = m.target;
    return j;
}

json witness_to_json(const WitnessTree& node) {
    json j;
    j["attacker"] = {{"side", std::string(side_name(node.attacker_side))},
                     {"move", move_to_json(node.attacker_move)}};
    j["responses"] = json::array();
    for (const WitnessResponse& resp : node.responses) {
        json r;
        r["target"] = resp.target;
        if (resp.iso) {
            json pairs = json::array();
            for (const auto& [a, b] : resp.iso->mapping) pairs.push_back({a, b});
            r["iso"] = pairs;
        }
        r["next"] = witness_to_json(resp.next);
        j["responses"].push_back(std::move(r));
    }
    return j;
}

json verdict_to_json(const Verdict& v) {
    json j;
    j["kind"] = std::string(kind_name(v.kind));
    j["equivalent"] = v.equivalent;
    j["rounds"] = v.rounds;
    j["pairsInitial"] = v.pairs_initial;
    j["pairsFinal"] = v.pairs_final;
    if (v.witness) j["witness"] = witness_to_json(*v.witness);
    return j;
}

}  // namespace

bool verify_relation(EquivalenceKind kind, const ConfigStructure& left,
                     const ConfigStructure& right, const CandidateRelation& relation,
                     std::string* violation) {
    auto report = [&](const std::string& why) {
        if (violation) *violation = why;
        return false;
    };

    if (kind != EquivalenceKind::HH) {
        PairSet rel;
        for (const auto& [x, y] : relation.pairs) {
            if (!left.config_index(x) || !right.config_index(y)) {
                return report("relation mentions an unknown configuration");
            }
            rel.pairs.insert({x, y});
        }
        if (!rel.contains({}, {})) return report("relation does not contain the root pair");
        for (const auto& [x, y] : rel.pairs) {
            if (!clauses_hold(kind, left, right, x, y, rel, violation)) return false;
        }
        return true;
    }

    if (relation.isos.size() != relation.pairs.size()) {
        return report("HH relation needs one isomorphism per pair");
    }
    TripleSet rel;
    for (std::size_t i = 0; i < relation.pairs.size(); ++i) {
        const auto& [x, y] = relation.pairs[i];
        if (!left.config_index(x) || !right.config_index(y)) {
            return report("relation mentions an unknown configuration");
        }
        if (!is_isomorphism(left, x, right, y, relation.isos[i].mapping)) {
            return report("mapping for (" + render_configuration(x) + ", " +
                          render_configuration(y) + ") is not a label/order isomorphism");
        }
        rel.entries[{x, y}].insert(relation.isos[i].mapping);
    }
    if (!rel.contains({}, {}, {})) return report("relation does not contain the root triple");
    for (const auto& [pair, isos] : rel.entries) {
        const auto& [x, y] = pair;
        for (const IsoMap& f : isos) {
            for (Side side : {Side::Left, Side::Right}) {
                const ConfigStructure& att = side == Side::Left ? left : right;
                const Configuration& att_cfg = side == Side::Left ? x : y;
                for (const Move& mv : alphabet_moves(EquivalenceKind::HH, att, att_cfg)) {
                    bool matched = false;
                    for (const HHResponse& r : hh_responses(left, right, x, y, f, side, mv)) {
                        if (rel.contains(r.x2, r.y2, r.f2)) {
                            matched = true;
                            break;
                        }
                    }
                    if (!matched) {
                        return report("triple (" + render_configuration(x) + ", " +
                                      render_configuration(y) + ") has unmatched attacker move " +
                                      describe_move(side, mv));
                    }
                }
            }
        }
    }
    return true;
}

bool replay_witness(EquivalenceKind kind, const ConfigStructure& left,
                    const ConfigStructure& right, const WitnessTree& tree,
                    std::string* diagnostic) {
    Replayer r{kind, left, right, diagnostic};
    if (kind == EquivalenceKind::HH) return r.run_hh(tree, {}, {}, {});
    return r.run_pair(tree, {}, {});
}

std::string render_witness_text(const WitnessTree& tree, int indent) {
    std::ostringstream out;
    std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    out << pad << "attacker " << (tree.attacker_side == Side::Left ? "LEFT " : "RIGHT ")
        << render_move(tree.attacker_move) << '\n';
    if (tree.responses.empty()) {
        out << pad << "  defender: no response\n";
        return out.str();
    }
    for (const WitnessResponse& resp : tree.responses) {
        out << pad << "  defender -> " << render_configuration(resp.target) << ":\n";
        out << render_witness_text(resp.next, indent + 2);
    }
    return out.str();
}

std::string render_verdict_text(const Verdict& v) {
    std::ostringstream out;
    out << kind_name(v.kind) << ": " << (v.equivalent ? "equivalent" : "inequivalent")
        << " (rounds=" << v.rounds << ", initial=" << v.pairs_initial
        << ", final=" << v.pairs_final << ")";
    return out.str();
}

std::string render_verdict_json(const Verdict& v) { return verdict_to_json(v).dump(2) + "\n"; }

std::string render_verdicts_json(const std::vector<Verdict>& verdicts) {
    json arr = json::array();
    for (const Verdict& v : verdicts) arr.push_back(verdict_to_json(v));
    return arr.dump(2) + "\n";
}

}  // namespace csr
