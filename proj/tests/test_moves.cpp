#include <algorithm>

#include "doctest.h"

#include "csr/moves.hpp"
#include "csr/semantics.hpp"
#include "support/util.hpp"

using namespace csr;
using testutil::S;
using testutil::ids;

namespace {

int count_with_labels(const std::vector<Move>& moves, std::vector<std::string> labels) {
    return static_cast<int>(
        std::count_if(moves.begin(), moves.end(), [&](const Move& m) { return m.labels == labels; }));
}

}  // namespace

TEST_CASE("singles") {
    ConfigStructure par = S("a|a");
    std::vector<Move> fwd = singles(par, {}, Direction::Forward);
    CHECK(fwd.size() == 2);
    CHECK(count_with_labels(fwd, {"a"}) == 2);

    ConfigStructure chain = S("a.a");
    std::vector<Move> rev = singles(chain, ids({"e1", "e2"}), Direction::Reverse);
    REQUIRE(rev.size() == 1);
    CHECK(rev[0].target == ids({"e1"}));
    CHECK(singles(chain, ids({"e1", "e2"}), Direction::Forward).empty());
    CHECK_THROWS_AS(singles(chain, ids({"e2"}), Direction::Forward), InputError);
}

TEST_CASE("steps see concurrency, chains do not") {
    CHECK(count_with_labels(steps(S("a|a"), {}, Direction::Forward), {"a", "a"}) == 1);
    CHECK(count_with_labels(steps(S("a.a"), {}, Direction::Forward), {"a", "a"}) == 0);

    // In (a|a)+a.a the chain branch offers no {a,a} reverse step.
    ConfigStructure mix = S("(a|a) + a.a");
    std::vector<Move> rev = steps(mix, ids({"e3", "e4"}), Direction::Reverse);
    CHECK(count_with_labels(rev, {"a", "a"}) == 0);
    CHECK(count_with_labels(rev, {"a"}) == 1);
    std::vector<Move> rev_par = steps(mix, ids({"e1", "e2"}), Direction::Reverse);
    CHECK(count_with_labels(rev_par, {"a", "a"}) == 1);
}

TEST_CASE("depth singles tag the depth in the larger configuration") {
    ConfigStructure chain = S("a.a");
    std::vector<Move> first = depth_singles(chain, {}, Direction::Forward);
    REQUIRE(first.size() == 1);
    CHECK(first[0].depth == 1);
    std::vector<Move> second = depth_singles(chain, ids({"e1"}), Direction::Forward);
    REQUIRE(second.size() == 1);
    CHECK(second[0].depth == 2);
    std::vector<Move> back = depth_singles(chain, ids({"e1", "e2"}), Direction::Reverse);
    REQUIRE(back.size() == 1);
    CHECK(back[0].depth == 2);  // measured in the larger configuration

    for (const Move& m : depth_singles(S("a|a"), {}, Direction::Forward)) CHECK(m.depth == 1);

    ConfigStructure skew = S("a|b.a");
    std::vector<Move> into_full = depth_singles(skew, ids({"e1", "e2"}), Direction::Forward);
    REQUIRE(into_full.size() == 1);
    CHECK(into_full[0].labels == std::vector<std::string>{"a"});
    CHECK(into_full[0].depth == 2);
}

TEST_CASE("homogeneous and equidepth reverse steps of a|b.a") {
    ConfigStructure skew = S("a|b.a");
    Configuration full = ids({"e1", "e2", "e3"});

    std::vector<Move> hsteps = special_steps(skew, full, Direction::Reverse,
                                             StepConstraint::Homogeneous);
    // The two a-events are concurrent at different depths: {a,a} is a
    // homogeneous reverse step...
    CHECK(count_with_labels(hsteps, {"a", "a"}) == 1);
    CHECK(count_with_labels(hsteps, {"a"}) == 2);

    // ...but not an equidepth one.
    std::vector<Move> ehsteps = special_steps(skew, full, Direction::Reverse,
                                              StepConstraint::EquidepthHomogeneous);
    CHECK(count_with_labels(ehsteps, {"a", "a"}) == 0);
    for (const Move& m : ehsteps) CHECK(m.labels.size() == 1);

    std::vector<Move> par = special_steps(S("a|a"), ids({"e1", "e2"}), Direction::Reverse,
                                          StepConstraint::EquidepthHomogeneous);
    CHECK(count_with_labels(par, {"a", "a"}) == 1);

    CHECK(special_steps(skew, {}, Direction::Reverse, StepConstraint::Homogeneous).empty());
}

TEST_CASE("reverse moves are exactly the inverses of forward moves") {
    for (const char* term : {"a|b.a", "(a|a) + a.a", "a.b + b.a"}) {
        ConfigStructure s = S(term);
        for (Mask m : s.configs()) {
            Configuration x = s.ids_of(m);
            for (const Move& f : steps(s, x, Direction::Forward)) {
                std::vector<Move> back = steps(s, f.target, Direction::Reverse);
                bool found = false;
                for (const Move& r : back) {
                    if (r.target == x && r.labels == f.labels) found = true;
                }
                CHECK(found);
            }
        }
    }
}

TEST_CASE("move family inclusions") {
    ConfigStructure s = S("a|b.a");
    for (Mask m : s.configs()) {
        Configuration x = s.ids_of(m);
        for (Direction dir : {Direction::Forward, Direction::Reverse}) {
            std::vector<Move> all_steps = steps(s, x, dir);
            auto in_steps = [&](const Move& mv) {
                for (const Move& st : all_steps) {
                    if (st.target == mv.target && st.labels == mv.labels) return true;
                }
                return false;
            };
            for (const Move& mv : singles(s, x, dir)) CHECK(in_steps(mv));
            for (const Move& mv : special_steps(s, x, dir, StepConstraint::Homogeneous)) {
                CHECK(in_steps(mv));
            }
            std::vector<Move> hs = special_steps(s, x, dir, StepConstraint::Homogeneous);
            for (const Move& mv : special_steps(s, x, dir, StepConstraint::EquidepthHomogeneous)) {
                bool in_h = false;
                for (const Move& h : hs) {
                    if (h.target == mv.target && h.labels == mv.labels) in_h = true;
                }
                CHECK(in_h);
            }
        }
    }
}

TEST_CASE("without equidepth auto-concurrency every equidepth homogeneous step is a single") {
    for (const char* term : {"a|b.a", "a.b|c.a", "a.b + b.a"}) {
        ConfigStructure s = S(term);
        REQUIRE_FALSE(auto_concurrency(s).has_equidepth_auto_concurrency);
        for (Mask m : s.configs()) {
            for (Direction dir : {Direction::Forward, Direction::Reverse}) {
                for (const Move& mv : special_steps(s, s.ids_of(m), dir,
                                                    StepConstraint::EquidepthHomogeneous)) {
                    CHECK(mv.labels.size() == 1);
                }
            }
        }
    }
}

TEST_CASE("steps decompose into depth singles in non-increasing depth order") {
    for (const char* term : {"a|a", "a|b.a", "(a|(b+c)) + (a|b) + ((a+c)|b)", "a.b|c.a"}) {
        ConfigStructure s = S(term);
        for (Mask m : s.configs()) {
            Configuration x = s.ids_of(m);
            for (const Move& st : steps(s, x, Direction::Forward)) {
                // Order the added events by non-increasing depth in the target.
                DepthMap dm = depths(s, st.target);
                Configuration added;
                for (const std::string& id : st.target) {
                    if (!std::binary_search(x.begin(), x.end(), id)) added.push_back(id);
                }
                std::sort(added.begin(), added.end(), [&](const std::string& a, const std::string& b) {
                    return dm.depth.at(a) > dm.depth.at(b);
                });
                Configuration current = x;
                int last_depth = 1 << 20;
                for (const std::string& id : added) {
                    bool found = false;
                    for (const Move& ds : depth_singles(s, current, Direction::Forward)) {
                        Configuration next = current;
                        next.push_back(id);
                        std::sort(next.begin(), next.end());
                        if (ds.target == next) {
                            REQUIRE(ds.depth.has_value());
                            CHECK(*ds.depth <= last_depth);
                            last_depth = *ds.depth;
                            current = next;
                            found = true;
                            break;
                        }
                    }
                    CHECK(found);
                }
                CHECK(current == st.target);
            }
        }
    }
}

TEST_CASE("move rendering") {
    ConfigStructure s = S("a.a");
    std::vector<Move> mv = depth_singles(s, ids({"e1"}), Direction::Forward);
    REQUIRE(mv.size() == 1);
    CHECK(render_move(mv[0]) == "FWD kind=dsingle label(s)=a k=2 target=[e1,e2]");
}
