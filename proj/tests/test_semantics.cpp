#include <algorithm>

#include "doctest.h"

#include "csr/semantics.hpp"
#include "csr/validate.hpp"
#include "support/util.hpp"

using namespace csr;
using testutil::S;
using testutil::ids;

namespace {

bool has_pair(const std::vector<std::pair<std::string, std::string>>& pairs, const char* a,
              const char* b) {
    return std::find(pairs.begin(), pairs.end(), std::make_pair(std::string(a), std::string(b))) !=
           pairs.end();
}

}  // namespace

TEST_CASE("causality of a.a and a|a") {
    ConfigStructure chain = S("a.a");
    CausalContext cc = causality(chain, ids({"e1", "e2"}));
    CHECK(has_pair(cc.strictly, "e1", "e2"));
    CHECK_FALSE(has_pair(cc.strictly, "e2", "e1"));
    CHECK(cc.concurrent.empty());

    ConfigStructure par = S("a|a");
    CausalContext cp = causality(par, ids({"e1", "e2"}));
    CHECK(cp.strictly.empty());
    CHECK(has_pair(cp.concurrent, "e1", "e2"));
}

TEST_CASE("causality in the exclusive or-switch") {
    ConfigStructure d = testutil::or_switch_stable();
    CausalContext ctx = causality(d, ids({"0", "b"}));
    CHECK(has_pair(ctx.strictly, "0", "b"));
    CHECK_FALSE(has_pair(ctx.strictly, "b", "0"));
    CHECK_THROWS_AS(causality(d, ids({"b"})), InputError);
}

TEST_CASE("leq is a partial order on every configuration of the corpus") {
    for (const char* term : {"a.a", "a|a", "a.b + b.a", "(a|(b+c)) + (a|b) + ((a+c)|b)", "a|b.a"}) {
        ConfigStructure s = S(term);
        for (Mask m : s.configs()) {
            CausalContext ctx = causality(s, s.ids_of(m));
            for (const std::string& e : ctx.configuration) {
                CHECK(has_pair(ctx.leq, e.c_str(), e.c_str()));
            }
            for (const auto& [d, e] : ctx.leq) {
                if (d != e) CHECK_FALSE(has_pair(ctx.leq, e.c_str(), d.c_str()));
                for (const auto& [d2, f] : ctx.leq) {
                    if (d2 == e) CHECK(has_pair(ctx.leq, d.c_str(), f.c_str()));
                }
            }
        }
    }
}

TEST_CASE("sub-configurations are exactly the left-closed subsets") {
    for (const char* term : {"a.a", "a|b.a", "a.b + b.a", "(a|b) + a.b"}) {
        ConfigStructure s = S(term);
        for (Mask x : s.configs()) {
            CausalContext ctx = causality(s, s.ids_of(x));
            Configuration events = ctx.configuration;
            const std::size_t n = events.size();
            for (std::size_t sub = 0; sub < (std::size_t{1} << n); ++sub) {
                Configuration y;
                for (std::size_t b = 0; b < n; ++b) {
                    if ((sub >> b) & 1) y.push_back(events[b]);
                }
                bool left_closed = true;
                for (const auto& [d, e] : ctx.strictly) {
                    bool e_in = std::binary_search(y.begin(), y.end(), e);
                    bool d_in = std::binary_search(y.begin(), y.end(), d);
                    if (e_in && !d_in) left_closed = false;
                }
                CHECK(s.config_index(y).has_value() == left_closed);
            }
        }
    }
}

TEST_CASE("restriction coherence: the order of a sub-configuration is the restriction") {
    ConfigStructure s = S("a.b|c");
    for (Mask x : s.configs()) {
        CausalContext cx = causality(s, s.ids_of(x));
        for (Mask y : s.configs()) {
            if ((y & ~x) != 0) continue;
            CausalContext cy = causality(s, s.ids_of(y));
            for (const auto& [d, e] : cy.strictly) {
                CHECK(has_pair(cx.strictly, d.c_str(), e.c_str()));
            }
            for (const auto& [d, e] : cx.strictly) {
                auto in_y = [&](const std::string& id) {
                    Configuration yy = s.ids_of(y);
                    return std::binary_search(yy.begin(), yy.end(), id);
                };
                if (in_y(d) && in_y(e)) CHECK(has_pair(cy.strictly, d.c_str(), e.c_str()));
            }
        }
    }
}

TEST_CASE("depths match the examples") {
    DepthMap chain = depths(S("a.a"), ids({"e1", "e2"}));
    CHECK(chain.depth.at("e1") == 1);
    CHECK(chain.depth.at("e2") == 2);

    ConfigStructure skew = S("a|b.a");
    DepthMap dm = depths(skew, ids({"e1", "e2", "e3"}));
    CHECK(dm.depth.at("e1") == 1);  // first a
    CHECK(dm.depth.at("e2") == 1);  // b
    CHECK(dm.depth.at("e3") == 2);  // second a

    for (const std::string& id : minimal_events(skew, ids({"e1", "e2", "e3"}))) {
        CHECK(dm.depth.at(id) == 1);
    }
}

TEST_CASE("strict order raises depth, and depth is coherent across bounded configurations") {
    for (const char* term : {"a.a.b", "a|b.a", "(a|b) + a.b", "a.b|c.a"}) {
        ConfigStructure s = S(term);
        for (Mask x : s.configs()) {
            Configuration cx = s.ids_of(x);
            CausalContext ctx = causality(s, cx);
            DepthMap dx = depths(s, cx);
            for (const auto& [d, e] : ctx.strictly) CHECK(dx.depth.at(d) < dx.depth.at(e));
            for (Mask y : s.configs()) {
                Configuration cy = s.ids_of(y);
                DepthMap dy = depths(s, cy);
                bool bounded = false;
                for (Mask z : s.configs()) {
                    if (((x | y) & ~z) == 0) bounded = true;
                }
                if (!bounded) continue;
                for (const auto& [id, k] : dx.depth) {
                    if (dy.depth.count(id)) CHECK(dy.depth.at(id) == k);
                }
            }
        }
    }
}

TEST_CASE("minimal events") {
    CHECK(minimal_events(S("a.a"), ids({"e1", "e2"})) == ids({"e1"}));
    CHECK(minimal_events(S("a|a"), ids({"e1", "e2"})) == ids({"e1", "e2"}));
    CHECK(minimal_events(S("a|a"), {}) == Configuration{});
}

TEST_CASE("lift") {
    SUBCASE("chain residual") {
        ConfigStructure lifted = lift(S("a.a"), ids({"e1"}));
        CHECK(lifted.event_count() == 1);
        CHECK(lifted.event(0).id == "e2");
        CHECK(lifted.event(0).label == "a");
        CHECK(lifted.config_count() == 2);
    }
    SUBCASE("full parallel residual collapses to the root") {
        ConfigStructure lifted = lift(S("a|a"), ids({"e1", "e2"}));
        CHECK(lifted.event_count() == 0);
        CHECK(lifted.config_count() == 1);
    }
    SUBCASE("empty configuration lifts to the root-only structure") {
        ConfigStructure lifted = lift(S("a.b + b.a"), {});
        CHECK(lifted.config_count() == 1);
        CHECK(lifted.event_count() == 0);
    }
    SUBCASE("preconditions") {
        CHECK_THROWS_AS(lift(S("a.a"), ids({"e2"})), InputError);       // not a configuration
        CHECK_THROWS_AS(lift(S("a.a"), ids({"e1", "e2"})), InputError); // e2 not minimal
    }
    SUBCASE("lifting preserves stability") {
        for (const char* term : {"a.a", "a|b.a", "(a|(b+c)) + (a|b) + ((a+c)|b)"}) {
            ConfigStructure s = S(term);
            for (Mask m : s.configs()) {
                Configuration cfg = s.ids_of(m);
                if (minimal_events(s, cfg) != cfg) continue;
                CHECK(validate(lift(s, cfg)).stable());
            }
        }
    }
}

TEST_CASE("slices") {
    ConfigStructure chain = S("a.a");
    CHECK(slice_leq(chain, ids({"e1", "e2"}), 1) == ids({"e1"}));
    CHECK(slice_leq(chain, ids({"e1", "e2"}), 1) == minimal_events(chain, ids({"e1", "e2"})));
    CHECK(slice_range(chain, ids({"e1", "e2"}), 2, 2) == ids({"e2"}));
    CHECK(slice_geq(chain, ids({"e1", "e2"}), 2) == ids({"e2"}));

    ConfigStructure skew = S("a|b.a");
    CHECK(slice_range(skew, ids({"e1", "e2", "e3"}), 1, 1) == ids({"e1", "e2"}));
    CHECK_THROWS_AS(slice_range(skew, ids({"e1"}), 0, 1), InputError);
    CHECK_THROWS_AS(slice_range(skew, ids({"e1"}), 3, 2), InputError);
}

TEST_CASE("auto-concurrency report") {
    AutoConcurrencyReport par = auto_concurrency(S("a|a"));
    CHECK(par.has_auto_concurrency);
    CHECK(par.has_equidepth_auto_concurrency);

    AutoConcurrencyReport skew = auto_concurrency(S("a|b.a"));
    CHECK(skew.has_auto_concurrency);
    CHECK_FALSE(skew.has_equidepth_auto_concurrency);
    REQUIRE(skew.auto_witness.has_value());
    CHECK(skew.auto_witness->first_event == "e1");
    CHECK(skew.auto_witness->second_event == "e3");

    AutoConcurrencyReport chain = auto_concurrency(S("a.a"));
    CHECK_FALSE(chain.has_auto_concurrency);
    CHECK_FALSE(chain.has_equidepth_auto_concurrency);

    CHECK_THROWS_AS(auto_concurrency(testutil::or_switch_unstable()), InputError);
}
