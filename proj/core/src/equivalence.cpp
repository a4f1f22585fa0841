#include "csr/equivalence.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <set>

#include "csr/validate.hpp"
#include "detail/analysis.hpp"
#include "detail/bits.hpp"

namespace csr {

std::string_view kind_name(EquivalenceKind kind) {
    switch (kind) {
        case EquivalenceKind::IB: return "ib";
        case EquivalenceKind::SB: return "sb";
        case EquivalenceKind::DB: return "db";
        case EquivalenceKind::RB: return "rb";
        case EquivalenceKind::RSB: return "rsb";
        case EquivalenceKind::RHSB: return "rhsb";
        case EquivalenceKind::RHESB: return "rhesb";
        case EquivalenceKind::RDB: return "rdb";
        case EquivalenceKind::HH: return "hh";
    }
    return "?";
}

std::optional<EquivalenceKind> kind_from_name(std::string_view name) {
    for (EquivalenceKind k : all_equivalence_kinds) {
        if (kind_name(k) == name) return k;
    }
    return std::nullopt;
}

std::string_view side_name(Side side) { return side == Side::Left ? "left" : "right"; }

namespace {

using detail::bit;
using detail::for_each_bit;
using detail::popcount;
using detail::subset;

enum Family : int {
    FwdSingle,
    RevSingle,
    FwdStep,
    RevStep,
    FwdDSingle,
    RevDSingle,
    RevHStep,
    RevEHStep,
    FamilyCount,
};

const std::vector<Family>& kind_alphabet(EquivalenceKind kind) {
    static const std::vector<Family> ib = {FwdSingle};
    static const std::vector<Family> sb = {FwdStep};
    static const std::vector<Family> db = {FwdDSingle};
    static const std::vector<Family> rb = {FwdSingle, RevSingle};
    static const std::vector<Family> rsb = {FwdStep, RevStep};
    static const std::vector<Family> rhsb = {FwdSingle, RevHStep};
    static const std::vector<Family> rhesb = {FwdSingle, RevEHStep};
    static const std::vector<Family> rdb = {FwdDSingle, RevDSingle};
    switch (kind) {
        case EquivalenceKind::IB: return ib;
        case EquivalenceKind::SB: return sb;
        case EquivalenceKind::DB: return db;
        case EquivalenceKind::RB: return rb;
        case EquivalenceKind::RSB: return rsb;
        case EquivalenceKind::RHSB: return rhsb;
        case EquivalenceKind::RHESB: return rhesb;
        case EquivalenceKind::RDB: return rdb;
        case EquivalenceKind::HH: break;
    }
    throw InputError("HH has no flat move alphabet");
}

bool is_reverse_kind(EquivalenceKind kind) {
    switch (kind) {
        case EquivalenceKind::RB:
        case EquivalenceKind::RSB:
        case EquivalenceKind::RHSB:
        case EquivalenceKind::RHESB:
        case EquivalenceKind::RDB:
        case EquivalenceKind::HH:
            return true;
        default:
            return false;
    }
}

Family reverse_family(EquivalenceKind kind) {
    switch (kind) {
        case EquivalenceKind::RB: return RevSingle;
        case EquivalenceKind::RSB: return RevStep;
        case EquivalenceKind::RHSB: return RevHStep;
        case EquivalenceKind::RHESB: return RevEHStep;
        case EquivalenceKind::RDB: return RevDSingle;
        default: throw InputError("kind has no reverse moves");
    }
}

Direction family_direction(Family fam) {
    switch (fam) {
        case FwdSingle:
        case FwdStep:
        case FwdDSingle:
            return Direction::Forward;
        default:
            return Direction::Reverse;
    }
}

MoveKind family_move_kind(Family fam) {
    switch (fam) {
        case FwdSingle:
        case RevSingle:
            return MoveKind::Single;
        case FwdStep:
        case RevStep:
            return MoveKind::Step;
        case FwdDSingle:
        case RevDSingle:
            return MoveKind::DepthSingle;
        case RevHStep:
            return MoveKind::HomogeneousStep;
        case RevEHStep:
            return MoveKind::EquidepthStep;
        default:
            return MoveKind::Single;
    }
}

constexpr std::int64_t key_stride = 1024;  // depth / step size sub-key

struct KeyedMove {
    std::int64_t key;
    int target;

    bool operator<(const KeyedMove& other) const {
        return key != other.key ? key < other.key : target < other.target;
    }
};

/// Joint label and multiset interning shared by the two sides of a check, so
/// the per-move keys are comparable across structures.
struct EngineSession {
    std::vector<std::string> labels;                      // sorted union
    std::map<std::vector<int>, std::int64_t> multisets;   // assigned after collection

    void init_labels(const ConfigStructure& a, const ConfigStructure& b) {
        labels = a.labels();
        labels.insert(labels.end(), b.labels().begin(), b.labels().end());
        std::sort(labels.begin(), labels.end());
        labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    }

    int label_id(const std::string& name) const {
        auto it = std::lower_bound(labels.begin(), labels.end(), name);
        return static_cast<int>(it - labels.begin());
    }

    void collect_multiset(const std::vector<int>& sorted) { multisets.emplace(sorted, 0); }

    /// Keys ordered by (size, label sequence), so smaller steps sort first.
    void freeze_multisets() {
        std::vector<const std::vector<int>*> order;
        order.reserve(multisets.size());
        for (auto& [ms, id] : multisets) order.push_back(&ms);
        std::sort(order.begin(), order.end(), [](const auto* a, const auto* b) {
            if (a->size() != b->size()) return a->size() < b->size();
            return *a < *b;
        });
        for (std::size_t i = 0; i < order.size(); ++i) multisets[*order[i]] = static_cast<std::int64_t>(i);
    }

    std::int64_t multiset_id(const std::vector<int>& sorted) const {
        return multisets.at(sorted);
    }
};

/// Move tables of one structure, keyed for cross-structure matching.
struct SideTables {
    const ConfigStructure* s = nullptr;
    detail::Analysis an;
    std::vector<int> joint_label;                      // per event
    std::array<std::vector<std::vector<KeyedMove>>, FamilyCount> fam;
    std::vector<std::int64_t> config_multiset;         // interned l(X) per config

    explicit SideTables(const ConfigStructure& structure) : s(&structure), an(structure) {}

    std::vector<int> diff_labels(Mask diff) const {
        std::vector<int> ls;
        for_each_bit(diff, [&](int e) { ls.push_back(joint_label[static_cast<std::size_t>(e)]); });
        std::sort(ls.begin(), ls.end());
        return ls;
    }

    void collect(EngineSession& session) {
        joint_label.clear();
        for (const Event& e : s->events()) joint_label.push_back(session.label_id(e.label));
        for (Mask x : s->configs()) session.collect_multiset(diff_labels(x));
        const auto& cfgs = s->configs();
        for (std::size_t i = 0; i < cfgs.size(); ++i) {
            for (std::size_t j = 0; j < cfgs.size(); ++j) {
                if (i == j || !subset(cfgs[i], cfgs[j])) continue;
                Mask diff = cfgs[j] & ~cfgs[i];
                if (detail::step_diff_ok(an.sem[j], diff)) session.collect_multiset(diff_labels(diff));
            }
        }
    }

    void build(const EngineSession& session) {
        const auto& cfgs = s->configs();
        const int n = static_cast<int>(cfgs.size());
        for (auto& f : fam) f.assign(static_cast<std::size_t>(n), {});
        config_multiset.clear();
        for (Mask x : cfgs) config_multiset.push_back(session.multiset_id(diff_labels(x)));

        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                if (i == j) continue;
                Mask small = cfgs[static_cast<std::size_t>(i)];
                Mask large = cfgs[static_cast<std::size_t>(j)];
                if (!subset(small, large)) continue;
                Mask diff = large & ~small;
                const detail::ConfigSemantics& sem = an.sem[static_cast<std::size_t>(j)];

                if (popcount(diff) == 1) {
                    int e = std::countr_zero(diff);
                    std::int64_t label = joint_label[static_cast<std::size_t>(e)];
                    fam[FwdSingle][static_cast<std::size_t>(i)].push_back({label, j});
                    fam[RevSingle][static_cast<std::size_t>(j)].push_back({label, i});
                    std::int64_t dkey =
                        label * key_stride + sem.depth[static_cast<std::size_t>(e)];
                    fam[FwdDSingle][static_cast<std::size_t>(i)].push_back({dkey, j});
                    fam[RevDSingle][static_cast<std::size_t>(j)].push_back({dkey, i});
                }
                if (!detail::step_diff_ok(sem, diff)) continue;
                std::int64_t ms = session.multiset_id(diff_labels(diff));
                fam[FwdStep][static_cast<std::size_t>(i)].push_back({ms, j});
                fam[RevStep][static_cast<std::size_t>(j)].push_back({ms, i});

                int first = std::countr_zero(diff);
                bool homogeneous = true;
                bool equidepth = true;
                for_each_bit(diff, [&](int e) {
                    if (joint_label[static_cast<std::size_t>(e)] !=
                        joint_label[static_cast<std::size_t>(first)]) {
                        homogeneous = false;
                    }
                    if (sem.depth[static_cast<std::size_t>(e)] !=
                        sem.depth[static_cast<std::size_t>(first)]) {
                        equidepth = false;
                    }
                });
                if (homogeneous) {
                    std::int64_t hkey = std::int64_t{joint_label[static_cast<std::size_t>(first)]} *
                                            key_stride + popcount(diff);
                    fam[RevHStep][static_cast<std::size_t>(j)].push_back({hkey, i});
                    if (equidepth) fam[RevEHStep][static_cast<std::size_t>(j)].push_back({hkey, i});
                }
            }
        }
        for (auto& f : fam) {
            for (auto& list : f) std::sort(list.begin(), list.end());
        }
    }

    /// Move object for the killer / replay rendering.
    Move make_move(Family family, int source_cfg, int target_cfg) const {
        Move mv;
        mv.direction = family_direction(family);
        mv.kind = family_move_kind(family);
        Mask src = s->config_mask(source_cfg);
        Mask tgt = s->config_mask(target_cfg);
        mv.source = s->ids_of(src);
        mv.target = s->ids_of(tgt);
        Mask diff = src ^ tgt;
        std::vector<std::string> labels;
        for_each_bit(diff, [&](int e) { labels.push_back(s->event(e).label); });
        std::sort(labels.begin(), labels.end());
        mv.labels = std::move(labels);
        if (mv.kind == MoveKind::DepthSingle) {
            Mask larger = mv.direction == Direction::Forward ? tgt : src;
            int cfg = *s->config_index(larger);
            int e = std::countr_zero(diff);
            mv.depth = an.sem[static_cast<std::size_t>(cfg)].depth[static_cast<std::size_t>(e)];
        }
        return mv;
    }
};

struct Killer {
    Side side = Side::Left;
    Family fam = FwdSingle;
    std::int64_t key = 0;
    int target = 0;
};

struct PairEngine {
    EquivalenceKind kind;
    CheckOptions opt;
    EngineSession session;
    SideTables tl, tr;
    int nl, nr;
    std::vector<std::int32_t> rank;  // -1 alive, 0 pre-filtered, r >= 1 deleted in round r
    std::vector<Killer> killers;
    int rounds = 0;
    std::size_t initial = 0;
    int root_l, root_r;

    PairEngine(EquivalenceKind k, const ConfigStructure& left, const ConfigStructure& right,
               const CheckOptions& options)
        : kind(k), opt(options), tl(left), tr(right) {
        nl = left.config_count();
        nr = right.config_count();
        root_l = *left.config_index(Mask{0});
        root_r = *right.config_index(Mask{0});
        session.init_labels(left, right);
        tl.collect(session);
        tr.collect(session);
        session.freeze_multisets();
        tl.build(session);
        tr.build(session);
    }

    std::size_t index(int x, int y) const {
        return static_cast<std::size_t>(x) * static_cast<std::size_t>(nr) +
               static_cast<std::size_t>(y);
    }

    bool response_alive(Side attacker, Family fam, int def_cfg, std::int64_t key, int att_target,
                        const std::vector<char>& alive) const {
        const SideTables& def = attacker == Side::Left ? tr : tl;
        const auto& list = def.fam[fam][static_cast<std::size_t>(def_cfg)];
        auto lo = std::lower_bound(list.begin(), list.end(), KeyedMove{key, -1});
        for (auto it = lo; it != list.end() && it->key == key; ++it) {
            std::size_t p = attacker == Side::Left ? index(att_target, it->target)
                                                   : index(it->target, att_target);
            if (alive[p]) return true;
        }
        return false;
    }

    bool violates(int x, int y, const std::vector<char>& alive, Killer* out) const {
        for (Side side : {Side::Left, Side::Right}) {
            const SideTables& att = side == Side::Left ? tl : tr;
            int att_cfg = side == Side::Left ? x : y;
            int def_cfg = side == Side::Left ? y : x;
            for (Family fam : kind_alphabet(kind)) {
                for (const KeyedMove& mv : att.fam[fam][static_cast<std::size_t>(att_cfg)]) {
                    if (!response_alive(side, fam, def_cfg, mv.key, mv.target, alive)) {
                        *out = {side, fam, mv.key, mv.target};
                        return true;
                    }
                }
            }
        }
        return false;
    }

    void run() {
        std::size_t total = static_cast<std::size_t>(nl) * static_cast<std::size_t>(nr);
        if (total > opt.limits.max_relation) {
            throw CapacityError("candidate relation of " + std::to_string(total) +
                                " pairs exceeds the guard");
        }
        rank.assign(total, -1);
        killers.assign(total, {});
        if (is_reverse_kind(kind) && opt.apply_label_prefilter) {
            for (int x = 0; x < nl; ++x) {
                for (int y = 0; y < nr; ++y) {
                    if (tl.config_multiset[static_cast<std::size_t>(x)] !=
                        tr.config_multiset[static_cast<std::size_t>(y)]) {
                        rank[index(x, y)] = 0;
                    }
                }
            }
        }
        initial = static_cast<std::size_t>(std::count(rank.begin(), rank.end(), -1));

        std::vector<char> alive(total);
        int round = 0;
        for (;;) {
            for (std::size_t p = 0; p < total; ++p) alive[p] = rank[p] == -1;
            ++round;
            bool changed = false;
            for (int x = 0; x < nl; ++x) {
                for (int y = 0; y < nr; ++y) {
                    std::size_t p = index(x, y);
                    if (!alive[p]) continue;
                    Killer k;
                    if (violates(x, y, alive, &k)) {
                        rank[p] = round;
                        killers[p] = k;
                        changed = true;
                    }
                }
            }
            if (!changed) {
                rounds = round - 1;
                break;
            }
        }
    }

    // -- witness extraction ---------------------------------------------

    WitnessTree build_witness(int x, int y, std::size_t& nodes) const {
        if (++nodes > opt.limits.max_witness_nodes) {
            throw CapacityError("witness exceeds the node guard");
        }
        std::size_t p = index(x, y);
        assert(rank[p] >= 0);
        if (rank[p] == 0) return mismatch_witness(x, y, nodes);

        const Killer& k = killers[p];
        const SideTables& att = k.side == Side::Left ? tl : tr;
        int att_cfg = k.side == Side::Left ? x : y;
        int def_cfg = k.side == Side::Left ? y : x;

        WitnessTree node;
        node.attacker_side = k.side;
        node.attacker_move = att.make_move(k.fam, att_cfg, k.target);
        const SideTables& def = k.side == Side::Left ? tr : tl;
        const auto& list = def.fam[k.fam][static_cast<std::size_t>(def_cfg)];
        auto lo = std::lower_bound(list.begin(), list.end(), KeyedMove{k.key, -1});
        for (auto it = lo; it != list.end() && it->key == k.key; ++it) {
            int cx = k.side == Side::Left ? k.target : it->target;
            int cy = k.side == Side::Left ? it->target : k.target;
            WitnessResponse resp;
            resp.target = def.s->ids_of(def.s->config_mask(it->target));
            resp.next = build_witness(cx, cy, nodes);
            node.responses.push_back(std::move(resp));
        }
        return node;
    }

    /// Strategy for pre-filtered pairs: the label multisets differ, and any
    /// matched pair of reverse singles keeps them different, so driving the
    /// left side down to the root leaves the defender stuck.
    WitnessTree mismatch_witness(int x, int y, std::size_t& nodes) const {
        Family fam = reverse_family(kind);
        WitnessTree node;
        if (tl.s->config_mask(x) == 0) {
            // Only the right side has events left; it can reverse, the left
            // cannot answer at all.
            const auto& list = tr.fam[fam][static_cast<std::size_t>(y)];
            assert(!list.empty());
            const KeyedMove& mv = pick_singleton(tr, fam, y);
            node.attacker_side = Side::Right;
            node.attacker_move = tr.make_move(fam, y, mv.target);
            return node;
        }
        const KeyedMove& mv = pick_singleton(tl, fam, x);
        node.attacker_side = Side::Left;
        node.attacker_move = tl.make_move(fam, x, mv.target);
        const auto& list = tr.fam[fam][static_cast<std::size_t>(y)];
        auto lo = std::lower_bound(list.begin(), list.end(), KeyedMove{mv.key, -1});
        for (auto it = lo; it != list.end() && it->key == mv.key; ++it) {
            WitnessResponse resp;
            resp.target = tr.s->ids_of(tr.s->config_mask(it->target));
            resp.next = build_witness(mv.target, it->target, nodes);
            node.responses.push_back(std::move(resp));
        }
        return node;
    }

    const KeyedMove& pick_singleton(const SideTables& t, Family fam, int cfg) const {
        const auto& list = t.fam[fam][static_cast<std::size_t>(cfg)];
        for (const KeyedMove& mv : list) {
            Mask diff = t.s->config_mask(cfg) ^ t.s->config_mask(mv.target);
            if (popcount(diff) == 1) return mv;
        }
        // A non-empty configuration of a stable structure always has a
        // reverse single (connectedness).
        assert(!list.empty());
        return list.front();
    }
};

// ---------------------------------------------------------------------------
// HH: triples (X, Y, f) with f a label- and order-isomorphism.

struct HHEngine {
    CheckOptions opt;
    EngineSession session;
    SideTables tl, tr;
    int nl, nr;

    struct PairIsos {
        std::vector<std::vector<int>> isos;       // image event per X-position
        std::map<std::vector<int>, int> lookup;   // image vector -> local index
        std::vector<int> triple_id;
    };
    std::map<std::pair<int, int>, PairIsos> by_pair;
    struct Triple {
        int x, y, iso;
    };
    std::vector<Triple> triples;
    std::vector<std::int32_t> rank;
    struct HHKiller {
        Side side = Side::Left;
        Direction dir = Direction::Forward;
        std::int64_t key = 0;
        int target = 0;
    };
    std::vector<HHKiller> killers;
    int rounds = 0;
    int root = -1;

    HHEngine(const ConfigStructure& left, const ConfigStructure& right, const CheckOptions& options)
        : opt(options), tl(left), tr(right) {
        nl = left.config_count();
        nr = right.config_count();
        session.init_labels(left, right);
        tl.collect(session);
        tr.collect(session);
        session.freeze_multisets();
        tl.build(session);
        tr.build(session);
        enumerate_triples();
    }

    static std::vector<int> config_events(Mask m) {
        std::vector<int> events;
        for_each_bit(m, [&](int e) { events.push_back(e); });
        return events;
    }

    void enumerate_triples() {
        for (int x = 0; x < nl; ++x) {
            for (int y = 0; y < nr; ++y) {
                if (tl.config_multiset[static_cast<std::size_t>(x)] !=
                    tr.config_multiset[static_cast<std::size_t>(y)]) {
                    continue;
                }
                std::vector<std::vector<int>> isos = enumerate_isos(x, y);
                if (isos.empty()) continue;
                PairIsos entry;
                for (std::vector<int>& f : isos) {
                    int local = static_cast<int>(entry.isos.size());
                    entry.lookup.emplace(f, local);
                    entry.triple_id.push_back(static_cast<int>(triples.size()));
                    triples.push_back({x, y, local});
                    entry.isos.push_back(std::move(f));
                    if (triples.size() > opt.limits.max_relation) {
                        throw CapacityError("HH candidate triples exceed the guard");
                    }
                }
                by_pair.emplace(std::make_pair(x, y), std::move(entry));
            }
        }
        auto it = by_pair.find({*tl.s->config_index(Mask{0}), *tr.s->config_index(Mask{0})});
        assert(it != by_pair.end());
        root = it->second.triple_id[0];
    }

    /// Backtracking matcher pruned by (label, depth, predecessor count)
    /// signatures; order-isomorphisms preserve all three.
    std::vector<std::vector<int>> enumerate_isos(int x, int y) const {
        const detail::ConfigSemantics& sx = tl.an.sem[static_cast<std::size_t>(x)];
        const detail::ConfigSemantics& sy = tr.an.sem[static_cast<std::size_t>(y)];
        std::vector<int> xs = config_events(sx.mask);
        std::vector<int> ys = config_events(sy.mask);
        if (xs.size() != ys.size()) return {};

        auto signature = [](const SideTables& t, const detail::ConfigSemantics& sem, int e) {
            return std::array<int, 3>{t.joint_label[static_cast<std::size_t>(e)],
                                      sem.depth[static_cast<std::size_t>(e)],
                                      popcount(sem.preds[static_cast<std::size_t>(e)]) - 1};
        };

        std::vector<std::vector<int>> result;
        std::vector<int> image;
        std::vector<char> used(ys.size(), 0);
        auto rec = [&](auto&& self, std::size_t i) -> void {
            if (i == xs.size()) {
                result.push_back(image);
                if (result.size() > opt.limits.max_isos_per_pair) {
                    throw CapacityError("isomorphism count per pair exceeds the guard");
                }
                return;
            }
            int d = xs[i];
            for (std::size_t c = 0; c < ys.size(); ++c) {
                if (used[c]) continue;
                int e = ys[c];
                if (signature(tl, sx, d) != signature(tr, sy, e)) continue;
                bool ok = true;
                for (std::size_t j = 0; j < i && ok; ++j) {
                    if (sx.strict(xs[j], d) != sy.strict(image[j], e)) ok = false;
                    if (sx.strict(d, xs[j]) != sy.strict(e, image[j])) ok = false;
                }
                if (!ok) continue;
                used[c] = 1;
                image.push_back(e);
                self(self, i + 1);
                image.pop_back();
                used[c] = 0;
            }
        };
        rec(rec, 0);
        return result;
    }

    int triple_index(int x, int y, const std::vector<int>& f) const {
        auto it = by_pair.find({x, y});
        if (it == by_pair.end()) return -1;
        auto jt = it->second.lookup.find(f);
        if (jt == it->second.lookup.end()) return -1;
        return it->second.triple_id[static_cast<std::size_t>(jt->second)];
    }

    /// Image vector after X gains event dnew (mapped to enew).
    static std::vector<int> extend(const std::vector<int>& f, Mask old_mask, int dnew, int enew) {
        int pos = popcount(old_mask & (bit(dnew) - 1));
        std::vector<int> f2 = f;
        f2.insert(f2.begin() + pos, enew);
        return f2;
    }

    /// Whether f2 = f u {dnew -> enew} is still an order isomorphism inside
    /// (x2, y2); only the new event's row needs checking.
    bool extension_ok(const std::vector<int>& f, Mask old_mask, int dnew, int enew, int x2,
                      int y2) const {
        const detail::ConfigSemantics& sx = tl.an.sem[static_cast<std::size_t>(x2)];
        const detail::ConfigSemantics& sy = tr.an.sem[static_cast<std::size_t>(y2)];
        std::size_t i = 0;
        bool ok = true;
        for_each_bit(old_mask, [&](int d) {
            int e = f[i++];
            if (sx.strict(d, dnew) != sy.strict(e, enew)) ok = false;
            if (sx.strict(dnew, d) != sy.strict(enew, e)) ok = false;
        });
        return ok;
    }

    struct Response {
        int x2, y2;
        std::vector<int> f2;
        int defender_target;  // config index on the defender's structure
    };

    /// All legal defender answers to an attacker move, independent of the
    /// current relation.  Forward answers range over the defender's same-label
    /// singles (the extension is forced); reverse answers are fully
    /// determined by the isomorphism.
    std::vector<Response> legal_responses(const Triple& t, Side side, Direction dir,
                                          std::int64_t key, int att_target) const {
        const std::vector<int>& f = by_pair.at({t.x, t.y}).isos[static_cast<std::size_t>(t.iso)];
        Mask xm = tl.s->config_mask(t.x);
        Mask ym = tr.s->config_mask(t.y);
        std::vector<Response> out;
        if (dir == Direction::Forward) {
            if (side == Side::Left) {
                int dnew = std::countr_zero(tl.s->config_mask(att_target) & ~xm);
                const auto& list = tr.fam[FwdSingle][static_cast<std::size_t>(t.y)];
                auto lo = std::lower_bound(list.begin(), list.end(), KeyedMove{key, -1});
                for (auto it = lo; it != list.end() && it->key == key; ++it) {
                    int enew = std::countr_zero(tr.s->config_mask(it->target) & ~ym);
                    if (!extension_ok(f, xm, dnew, enew, att_target, it->target)) continue;
                    out.push_back({att_target, it->target, extend(f, xm, dnew, enew), it->target});
                }
            } else {
                int enew = std::countr_zero(tr.s->config_mask(att_target) & ~ym);
                const auto& list = tl.fam[FwdSingle][static_cast<std::size_t>(t.x)];
                auto lo = std::lower_bound(list.begin(), list.end(), KeyedMove{key, -1});
                for (auto it = lo; it != list.end() && it->key == key; ++it) {
                    int dnew = std::countr_zero(tl.s->config_mask(it->target) & ~xm);
                    if (!extension_ok(f, xm, dnew, enew, it->target, att_target)) continue;
                    out.push_back({it->target, att_target, extend(f, xm, dnew, enew), it->target});
                }
            }
        } else {
            if (side == Side::Left) {
                Mask x2m = tl.s->config_mask(att_target);
                int removed = std::countr_zero(xm & ~x2m);
                int pos = popcount(xm & (bit(removed) - 1));
                Mask y2m = 0;
                for (std::size_t i = 0; i < f.size(); ++i) {
                    if (static_cast<int>(i) != pos) y2m |= bit(f[i]);
                }
                auto y2 = tr.s->config_index(y2m);
                if (y2) {
                    std::vector<int> f2 = f;
                    f2.erase(f2.begin() + pos);
                    out.push_back({att_target, *y2, std::move(f2), *y2});
                }
            } else {
                Mask y2m = tr.s->config_mask(att_target);
                int removed = std::countr_zero(ym & ~y2m);
                int pos = -1;
                for (std::size_t i = 0; i < f.size(); ++i) {
                    if (f[i] == removed) pos = static_cast<int>(i);
                }
                assert(pos >= 0);
                std::vector<int> xs = config_events(xm);
                Mask x2m = xm & ~bit(xs[static_cast<std::size_t>(pos)]);
                auto x2 = tl.s->config_index(x2m);
                if (x2) {
                    std::vector<int> f2 = f;
                    f2.erase(f2.begin() + pos);
                    out.push_back({*x2, att_target, std::move(f2), *x2});
                }
            }
        }
        return out;
    }

    bool violates(int tid, const std::vector<char>& alive, HHKiller* out) const {
        const Triple& t = triples[static_cast<std::size_t>(tid)];
        for (Side side : {Side::Left, Side::Right}) {
            const SideTables& att = side == Side::Left ? tl : tr;
            int att_cfg = side == Side::Left ? t.x : t.y;
            for (Family fam : {FwdSingle, RevSingle}) {
                Direction dir = family_direction(fam);
                for (const KeyedMove& mv : att.fam[fam][static_cast<std::size_t>(att_cfg)]) {
                    bool found = false;
                    for (const Response& r : legal_responses(t, side, dir, mv.key, mv.target)) {
                        int id = triple_index(r.x2, r.y2, r.f2);
                        if (id >= 0 && alive[static_cast<std::size_t>(id)]) {
                            found = true;
                            break;
                        }
                    }
                    if (!found) {
                        *out = {side, dir, mv.key, mv.target};
                        return true;
                    }
                }
            }
        }
        return false;
    }

    void run() {
        rank.assign(triples.size(), -1);
        killers.assign(triples.size(), {});
        std::vector<char> alive(triples.size());
        int round = 0;
        for (;;) {
            for (std::size_t p = 0; p < triples.size(); ++p) alive[p] = rank[p] == -1;
            ++round;
            bool changed = false;
            for (std::size_t p = 0; p < triples.size(); ++p) {
                if (!alive[p]) continue;
                HHKiller k;
                if (violates(static_cast<int>(p), alive, &k)) {
                    rank[p] = round;
                    killers[p] = k;
                    changed = true;
                }
            }
            if (!changed) {
                rounds = round - 1;
                break;
            }
        }
    }

    EventIsomorphism render_iso(Mask xm, const std::vector<int>& f) const {
        EventIsomorphism iso;
        std::size_t i = 0;
        for_each_bit(xm, [&](int d) {
            iso.mapping.emplace_back(tl.s->event(d).id, tr.s->event(f[i++]).id);
        });
        return iso;
    }

    WitnessTree build_witness(int tid, std::size_t& nodes) const {
        if (++nodes > opt.limits.max_witness_nodes) {
            throw CapacityError("witness exceeds the node guard");
        }
        const Triple& t = triples[static_cast<std::size_t>(tid)];
        assert(rank[static_cast<std::size_t>(tid)] >= 1);
        const HHKiller& k = killers[static_cast<std::size_t>(tid)];
        const SideTables& att = k.side == Side::Left ? tl : tr;
        int att_cfg = k.side == Side::Left ? t.x : t.y;
        Family fam = k.dir == Direction::Forward ? FwdSingle : RevSingle;

        WitnessTree node;
        node.attacker_side = k.side;
        node.attacker_move = att.make_move(fam, att_cfg, k.target);
        for (const Response& r : legal_responses(t, k.side, k.dir, k.key, k.target)) {
            int id = triple_index(r.x2, r.y2, r.f2);
            assert(id >= 0);
            WitnessResponse resp;
            resp.target = (k.side == Side::Left ? tr : tl)
                              .s->ids_of((k.side == Side::Left ? tr : tl).s->config_mask(r.defender_target));
            resp.iso = render_iso(tl.s->config_mask(r.x2), r.f2);
            resp.next = build_witness(id, nodes);
            node.responses.push_back(std::move(resp));
        }
        return node;
    }
};

}  // namespace

CandidateRelation maximal_bisimulation(EquivalenceKind kind, const ConfigStructure& left,
                                       const ConfigStructure& right, const CheckOptions& options) {
    require_stable(left, options.limits);
    require_stable(right, options.limits);

    CandidateRelation rel;
    rel.kind = kind;
    if (kind == EquivalenceKind::HH) {
        HHEngine engine(left, right, options);
        engine.run();
        rel.rounds = engine.rounds;
        rel.initial_size = engine.triples.size();
        for (std::size_t p = 0; p < engine.triples.size(); ++p) {
            if (engine.rank[p] != -1) continue;
            const auto& t = engine.triples[p];
            Mask xm = left.config_mask(t.x);
            rel.pairs.emplace_back(left.ids_of(xm), right.ids_of(right.config_mask(t.y)));
            rel.isos.push_back(engine.render_iso(
                xm, engine.by_pair.at({t.x, t.y}).isos[static_cast<std::size_t>(t.iso)]));
        }
        return rel;
    }
    PairEngine engine(kind, left, right, options);
    engine.run();
    rel.rounds = engine.rounds;
    rel.initial_size = engine.initial;
    for (int x = 0; x < engine.nl; ++x) {
        for (int y = 0; y < engine.nr; ++y) {
            if (engine.rank[engine.index(x, y)] != -1) continue;
            rel.pairs.emplace_back(left.ids_of(left.config_mask(x)),
                                   right.ids_of(right.config_mask(y)));
        }
    }
    return rel;
}

Verdict check(EquivalenceKind kind, const ConfigStructure& left, const ConfigStructure& right,
              const CheckOptions& options) {
    require_stable(left, options.limits);
    require_stable(right, options.limits);

    Verdict v;
    v.kind = kind;
    if (kind == EquivalenceKind::HH) {
        HHEngine engine(left, right, options);
        engine.run();
        v.rounds = engine.rounds;
        v.pairs_initial = engine.triples.size();
        v.pairs_final = static_cast<std::size_t>(
            std::count(engine.rank.begin(), engine.rank.end(), -1));
        v.equivalent = engine.rank[static_cast<std::size_t>(engine.root)] == -1;
        if (!v.equivalent && options.want_witness) {
            std::size_t nodes = 0;
            v.witness = engine.build_witness(engine.root, nodes);
        }
        return v;
    }
    PairEngine engine(kind, left, right, options);
    engine.run();
    v.rounds = engine.rounds;
    v.pairs_initial = engine.initial;
    v.pairs_final = static_cast<std::size_t>(std::count(engine.rank.begin(), engine.rank.end(), -1));
    v.equivalent = engine.rank[engine.index(engine.root_l, engine.root_r)] == -1;
    if (!v.equivalent && options.want_witness) {
        std::size_t nodes = 0;
        v.witness = engine.build_witness(engine.root_l, engine.root_r, nodes);
    }
    return v;
}

std::vector<Verdict> check_all(const ConfigStructure& left, const ConfigStructure& right,
                               const CheckOptions& options) {
    std::vector<Verdict> out;
    out.reserve(all_equivalence_kinds.size());
    for (EquivalenceKind kind : all_equivalence_kinds) {
        out.push_back(check(kind, left, right, options));
    }
    return out;
}

}  // namespace csr
