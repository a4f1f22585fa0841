#include "csr/laws.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <random>
#include <set>

#include "csr/corpus.hpp"
#include "csr/equivalence.hpp"
#include "csr/exchange.hpp"
#include "csr/semantics.hpp"
#include "csr/term.hpp"
#include "csr/validate.hpp"

namespace csr {

namespace {

using K = EquivalenceKind;

std::uint64_t fnv1a(std::string_view text) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (char c : text) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ull;
    }
    return h;
}

bool needs_hh(const std::string& law) { return law == "hierarchy" || law == "rb=hh-noeqac"; }

std::string alphabet_label(int i) {
    if (i < 26) return std::string(1, static_cast<char>('a' + i));
    return "l" + std::to_string(i + 1);
}

/// Drops one maximal configuration or relabels one event; stability is
/// preserved either way.
ConfigStructure mutate(const ConfigStructure& s, std::uint64_t seed, int alphabet) {
    std::mt19937_64 rng(seed);
    bool drop = (rng() & 1) != 0 && s.config_count() > 1;
    if (drop) {
        std::vector<Mask> maximal;
        for (Mask x : s.configs()) {
            if (x == 0) continue;
            bool has_superset = false;
            for (Mask y : s.configs()) {
                if (y != x && (x & ~y) == 0) has_superset = true;
            }
            if (!has_superset) maximal.push_back(x);
        }
        if (!maximal.empty()) {
            Mask victim = maximal[rng() % maximal.size()];
            std::vector<Mask> configs;
            Mask used = 0;
            for (Mask x : s.configs()) {
                if (x == victim) continue;
                configs.push_back(x);
                used |= x;
            }
            std::vector<Event> events;
            std::vector<int> new_bit(static_cast<std::size_t>(s.event_count()), -1);
            int kept = 0;
            for (int b = 0; b < s.event_count(); ++b) {
                if ((used >> b) & 1) {
                    new_bit[static_cast<std::size_t>(b)] = kept++;
                    events.push_back(s.event(b));
                }
            }
            for (Mask& m : configs) {
                Mask packed = 0;
                for (int b = 0; b < s.event_count(); ++b) {
                    if (((m >> b) & 1) && new_bit[static_cast<std::size_t>(b)] >= 0) {
                        packed |= Mask{1} << new_bit[static_cast<std::size_t>(b)];
                    }
                }
                m = packed;
            }
            return ConfigStructure::from_masks(std::move(events), std::move(configs));
        }
    }
    if (s.event_count() == 0) return s;
    std::vector<Event> events(s.events().begin(), s.events().end());
    std::size_t victim = rng() % events.size();
    int width = std::max(2, alphabet);
    std::string fresh;
    do {
        fresh = alphabet_label(static_cast<int>(rng() % static_cast<std::uint64_t>(width)));
    } while (fresh == events[victim].label);
    events[victim].label = fresh;
    return ConfigStructure::from_masks(std::move(events), s.configs());
}

ConfigStructure generate_one(std::uint64_t seed, const LawParams& p, const Limits& limits,
                             bool allow_gadget) {
    GenParams gp;
    gp.seed = seed;
    gp.max_events = p.max_events;
    gp.label_alphabet = p.label_alphabet;
    gp.mode = (allow_gadget && seed % 5 >= 3) ? GenMode::Gadget : GenMode::PrimeES;
    return generate(gp, limits);
}

bool equidepth_auto_concurrency_free(const ConfigStructure& s, const Limits& limits) {
    return !auto_concurrency(s, limits).has_equidepth_auto_concurrency;
}

// Terms with auto-concurrency at distinct depths only; used to make sure the
// no-equidepth law sees genuinely auto-concurrent instances.
const std::vector<std::string>& skewed_auto_concurrency_terms() {
    static const std::vector<std::string> terms = {
        "a|b.a", "a.b|c.a", "b|a.b", "a|b.a|c", "c.a|a",
    };
    return terms;
}

std::pair<ConfigStructure, ConfigStructure> build_instance(const std::string& law,
                                                           const LawParams& params, int index,
                                                           const Limits& limits) {
    LawParams p = params;
    if (needs_hh(law)) p.max_events = std::min(p.max_events, 8);
    std::uint64_t base = mix_seed(p.seed ^ fnv1a(law), static_cast<std::uint64_t>(index));

    if (law == "rb=hh-noeqac") {
        if (index % 10 == 0) {
            const auto& terms = skewed_auto_concurrency_terms();
            const std::string& t = terms[static_cast<std::size_t>(index / 10) % terms.size()];
            ConfigStructure s = translate(t, limits);
            return {s, rename_events(s, "r")};
        }
        for (int attempt = 0; attempt < 64; ++attempt) {
            std::uint64_t seed = mix_seed(base, static_cast<std::uint64_t>(attempt));
            ConfigStructure left = generate_one(seed, p, limits, true);
            ConfigStructure right;
            switch (index % 3) {
                case 0: right = rename_events(left, "r"); break;
                case 1: right = mutate(left, mix_seed(seed, 1), p.label_alphabet); break;
                default: right = generate_one(mix_seed(seed, 2), p, limits, true); break;
            }
            if (equidepth_auto_concurrency_free(left, limits) &&
                equidepth_auto_concurrency_free(right, limits)) {
                return {std::move(left), std::move(right)};
            }
        }
        // Dense conflicts leave no concurrency at all, so this always lands.
        GenParams gp;
        gp.seed = base;
        gp.max_events = std::min(p.max_events, 5);
        gp.label_alphabet = p.label_alphabet;
        gp.conflict_density = 1.0;
        ConfigStructure left = generate(gp, limits);
        return {left, rename_events(left, "r")};
    }

    ConfigStructure left = generate_one(base, p, limits, true);
    ConfigStructure right;
    switch (index % 3) {
        case 0: right = rename_events(left, "r"); break;
        case 1: right = mutate(left, mix_seed(base, 1), p.label_alphabet); break;
        default: right = generate_one(mix_seed(base, 2), p, limits, true); break;
    }
    return {std::move(left), std::move(right)};
}

struct LawContext {
    const ConfigStructure& left;
    const ConfigStructure& right;
    const Limits& limits;
    std::map<K, Verdict> verdicts;
    std::vector<std::string>* findings = nullptr;

    bool holds(K kind) {
        auto it = verdicts.find(kind);
        if (it == verdicts.end()) {
            CheckOptions o;
            o.limits = limits;
            it = verdicts.emplace(kind, check(kind, left, right, o)).first;
        }
        return it->second.equivalent;
    }

    CandidateRelation fixpoint(K kind, bool prefilter = true) const {
        CheckOptions o;
        o.limits = limits;
        o.apply_label_prefilter = prefilter;
        return maximal_bisimulation(kind, left, right, o);
    }
};

std::vector<std::string> label_multiset_of(const ConfigStructure& s, const Configuration& x) {
    std::vector<std::string> labels;
    for (const std::string& id : x) labels.push_back(s.event(s.event_index(id)).label);
    std::sort(labels.begin(), labels.end());
    return labels;
}

Configuration set_difference(const Configuration& x, const Configuration& m) {
    Configuration out;
    std::set_difference(x.begin(), x.end(), m.begin(), m.end(), std::back_inserter(out));
    return out;
}

std::optional<std::string> law_hierarchy(LawContext& ctx) {
    static const std::pair<K, K> implications[] = {
        {K::HH, K::RSB}, {K::RSB, K::RB}, {K::RSB, K::SB}, {K::RB, K::IB},
        {K::SB, K::IB},  {K::DB, K::SB},  {K::RDB, K::RSB},
    };
    for (const auto& [fine, coarse] : implications) {
        if (ctx.holds(fine) && !ctx.holds(coarse)) {
            return std::string(kind_name(fine)) + " holds but " + std::string(kind_name(coarse)) +
                   " fails";
        }
    }
    if (ctx.findings && ctx.holds(K::RSB) && !ctx.holds(K::HH)) {
        ctx.findings->push_back("rsb-equivalent but hh-inequivalent pair");
    }
    return std::nullopt;
}

std::optional<std::string> law_rsb_rhsb(LawContext& ctx) {
    if (ctx.holds(K::RSB) != ctx.holds(K::RHSB)) return "rsb and rhsb verdicts differ";
    return std::nullopt;
}

std::optional<std::string> law_rdb_rhesb_rsb(LawContext& ctx) {
    bool rdb = ctx.holds(K::RDB);
    if (rdb != ctx.holds(K::RHESB)) return "rdb and rhesb verdicts differ";
    if (rdb != ctx.holds(K::RSB)) return "rdb and rsb verdicts differ";
    return std::nullopt;
}

std::optional<std::string> law_rb_hh_noeqac(LawContext& ctx) {
    if (!equidepth_auto_concurrency_free(ctx.left, ctx.limits) ||
        !equidepth_auto_concurrency_free(ctx.right, ctx.limits)) {
        return std::nullopt;  // outside the theorem's hypothesis
    }
    if (ctx.holds(K::RB) != ctx.holds(K::HH)) return "rb and hh verdicts differ";
    return std::nullopt;
}

std::optional<std::string> law_db_sb(LawContext& ctx) {
    if (ctx.holds(K::DB) && !ctx.holds(K::SB)) return "db holds but sb fails";
    return std::nullopt;
}

std::optional<std::string> law_labels_lemma(LawContext& ctx) {
    CandidateRelation unfiltered = ctx.fixpoint(K::RB, false);
    for (const auto& [x, y] : unfiltered.pairs) {
        if (label_multiset_of(ctx.left, x) != label_multiset_of(ctx.right, y)) {
            return "maximal rb relates " + render_configuration(x) + " and " +
                   render_configuration(y) + " with different label multisets";
        }
    }
    CandidateRelation filtered = ctx.fixpoint(K::RB, true);
    if (unfiltered.pairs != filtered.pairs) return "label prefilter changed the rb fixpoint";
    return std::nullopt;
}

std::optional<std::string> law_min_lemma(LawContext& ctx) {
    CandidateRelation rel = ctx.fixpoint(K::RHSB);
    std::set<std::pair<Configuration, Configuration>> set(rel.pairs.begin(), rel.pairs.end());
    for (const auto& [x, y] : rel.pairs) {
        if (!set.count({minimal_events(ctx.left, x), minimal_events(ctx.right, y)})) {
            return "minimal events of related pair (" + render_configuration(x) + ", " +
                   render_configuration(y) + ") are not related";
        }
    }
    return std::nullopt;
}

std::optional<std::string> law_lift_lemma(LawContext& ctx) {
    CandidateRelation rel = ctx.fixpoint(K::RHSB);
    std::map<Configuration, Configuration> min_left, min_right;
    for (const auto& [x, y] : rel.pairs) {
        if (!min_left.count(x)) min_left[x] = minimal_events(ctx.left, x);
        if (!min_right.count(y)) min_right[y] = minimal_events(ctx.right, y);
    }
    for (const auto& [m, n] : rel.pairs) {
        if (min_left[m] != m || min_right[n] != n) continue;
        ConfigStructure lifted_left = lift(ctx.left, m);
        ConfigStructure lifted_right = lift(ctx.right, n);
        CandidateRelation projected;
        projected.kind = K::RHSB;
        for (const auto& [x, y] : rel.pairs) {
            if (min_left[x] != m || min_right[y] != n) continue;
            projected.pairs.emplace_back(set_difference(x, m), set_difference(y, n));
        }
        std::string why;
        if (!verify_relation(K::RHSB, lifted_left, lifted_right, projected, &why)) {
            return "lifted relation at (" + render_configuration(m) + ", " +
                   render_configuration(n) + ") is not an rhsb: " + why;
        }
    }
    return std::nullopt;
}

std::optional<std::string> law_levels(LawContext& ctx) {
    CandidateRelation rel = ctx.fixpoint(K::RHESB);
    std::set<std::pair<Configuration, Configuration>> set(rel.pairs.begin(), rel.pairs.end());
    for (const auto& [x, y] : rel.pairs) {
        DepthMap dx = depths(ctx.left, x);
        DepthMap dy = depths(ctx.right, y);
        int max_depth = 0;
        for (const auto& [id, d] : dx.depth) max_depth = std::max(max_depth, d);
        for (const auto& [id, d] : dy.depth) max_depth = std::max(max_depth, d);
        for (int n = 1; n <= max_depth; ++n) {
            Configuration xn = slice_leq(ctx.left, x, n);
            Configuration yn = slice_leq(ctx.right, y, n);
            if (!set.count({xn, yn})) {
                return "level " + std::to_string(n) + " slices of (" + render_configuration(x) +
                       ", " + render_configuration(y) + ") are not related";
            }
            std::vector<std::string> lx =
                label_multiset_of(ctx.left, slice_range(ctx.left, x, n, n));
            std::vector<std::string> ly =
                label_multiset_of(ctx.right, slice_range(ctx.right, y, n, n));
            if (lx != ly) {
                return "level " + std::to_string(n) + " label multisets differ for (" +
                       render_configuration(x) + ", " + render_configuration(y) + ")";
            }
        }
    }
    // Depth matching: related targets of equally-labelled singles agree on k.
    for (const auto& [x, y] : rel.pairs) {
        for (const Move& mx : depth_singles(ctx.left, x, Direction::Forward)) {
            for (const Move& my : depth_singles(ctx.right, y, Direction::Forward)) {
                if (mx.labels != my.labels || !set.count({mx.target, my.target})) continue;
                if (mx.depth != my.depth) {
                    return "depths of matched singles from (" + render_configuration(x) + ", " +
                           render_configuration(y) + ") differ";
                }
            }
        }
    }
    return std::nullopt;
}

using LawBody = std::optional<std::string> (*)(LawContext&);

const std::map<std::string, LawBody>& law_bodies() {
    static const std::map<std::string, LawBody> bodies = {
        {"hierarchy", law_hierarchy},
        {"rsb=rhsb", law_rsb_rhsb},
        {"rdb=rhesb=rsb", law_rdb_rhesb_rsb},
        {"rb=hh-noeqac", law_rb_hh_noeqac},
        {"db-sb", law_db_sb},
        {"labels-lemma", law_labels_lemma},
        {"min-lemma", law_min_lemma},
        {"lift-lemma", law_lift_lemma},
        {"levels", law_levels},
    };
    return bodies;
}

std::optional<std::string> run_body(const std::string& law, const ConfigStructure& left,
                                    const ConfigStructure& right, const Limits& limits,
                                    std::vector<std::string>* findings) {
    LawContext ctx{left, right, limits, {}, findings};
    return law_bodies().at(law)(ctx);
}

}  // namespace

const std::vector<std::string>& known_laws() {
    static const std::vector<std::string> laws = {
        "hierarchy", "rsb=rhsb", "rdb=rhesb=rsb", "rb=hh-noeqac", "db-sb",
        "labels-lemma", "min-lemma", "lift-lemma", "levels",
    };
    return laws;
}

std::pair<ConfigStructure, ConfigStructure> law_instance(const std::string& law,
                                                         const LawParams& params, int index,
                                                         const Limits& limits) {
    if (!law_bodies().count(law)) throw InputError("unknown law '" + law + "'");
    return build_instance(law, params, index, limits);
}

std::vector<LawReport> run_laws(const LawParams& params, const Limits& limits) {
    std::vector<std::string> selected = params.laws.empty() ? known_laws() : params.laws;
    for (const std::string& law : selected) {
        if (!law_bodies().count(law)) throw InputError("unknown law '" + law + "'");
    }

    std::vector<LawReport> reports;
    for (const std::string& law : selected) {
        auto start = std::chrono::steady_clock::now();
        LawReport report;
        report.law = law;

        std::vector<std::pair<ConfigStructure, ConfigStructure>> instances;
        if (params.include_corpus) {
            for (const CorpusEntry& entry : builtin_corpus()) {
                ConfigStructure left = translate(entry.left_term, limits);
                ConfigStructure right = translate(entry.right_term, limits);
                if (law == "rb=hh-noeqac" &&
                    (!equidepth_auto_concurrency_free(left, limits) ||
                     !equidepth_auto_concurrency_free(right, limits))) {
                    continue;
                }
                instances.emplace_back(std::move(left), std::move(right));
            }
        }
        for (int i = 0; i < params.count; ++i) {
            instances.push_back(build_instance(law, params, i, limits));
        }

        for (std::size_t i = 0; i < instances.size(); ++i) {
            const auto& [left, right] = instances[i];
            try {
                ++report.instances;
                std::optional<std::string> violation =
                    run_body(law, left, right, limits, &report.findings);
                if (!violation) continue;
                // Re-verify standalone through a serialisation round-trip
                // before reporting.
                std::string left_json = structure_to_json(left);
                std::string right_json = structure_to_json(right);
                ConfigStructure left2 = structure_from_json(left_json);
                ConfigStructure right2 = structure_from_json(right_json);
                std::optional<std::string> confirmed =
                    run_body(law, left2, right2, limits, nullptr);
                if (confirmed) {
                    report.violations.push_back({static_cast<int>(i), *confirmed,
                                                 std::move(left_json), std::move(right_json)});
                }
            } catch (const CapacityError&) {
                ++report.capacity_skips;
            }
        }
        report.elapsed_ms = std::chrono::duration<double, std::milli>(
                                std::chrono::steady_clock::now() - start)
                                .count();
        reports.push_back(std::move(report));
    }
    return reports;
}

}  // namespace csr
