#include "doctest.h"

#include "csr/validate.hpp"
#include "support/util.hpp"

using namespace csr;
using testutil::ids;

TEST_CASE("or-causation switch: inclusive fails bounded intersections, exclusive is stable") {
    ValidationReport unstable = validate(testutil::or_switch_unstable());
    CHECK(unstable.rooted);
    CHECK(unstable.connected);
    CHECK(unstable.bounded_unions);
    CHECK_FALSE(unstable.bounded_intersections);
    CHECK_FALSE(unstable.stable());
    REQUIRE(unstable.intersection_witness.has_value());
    CHECK((*unstable.intersection_witness)[0] == ids({"0", "b"}));
    CHECK((*unstable.intersection_witness)[1] == ids({"1", "b"}));
    CHECK((*unstable.intersection_witness)[2] == ids({"0", "1", "b"}));

    ValidationReport stable = validate(testutil::or_switch_stable());
    CHECK(stable.stable());
    CHECK_FALSE(stable.prime_intersections);
    REQUIRE(stable.prime_witness.has_value());
    CHECK((*stable.prime_witness)[0] == ids({"0", "b"}));
    CHECK((*stable.prime_witness)[1] == ids({"1", "b"}));
}

TEST_CASE("root-only family is stable") {
    ConfigStructure s = ConfigStructure::make({}, {{}});
    ValidationReport r = validate(s);
    CHECK(r.stable());
    CHECK(r.prime_intersections);
}

TEST_CASE("two-event jump is not connected") {
    ConfigStructure s = ConfigStructure::make({{"e1", "a"}, {"e2", "b"}}, {{}, {"e1", "e2"}});
    ValidationReport r = validate(s);
    CHECK(r.rooted);
    CHECK_FALSE(r.connected);
    REQUIRE(r.connected_witness.has_value());
    CHECK(*r.connected_witness == ids({"e1", "e2"}));
    CHECK_FALSE(r.stable());
}

TEST_CASE("missing root is reported") {
    ConfigStructure s = ConfigStructure::make({{"e1", "a"}}, {{"e1"}});
    ValidationReport r = validate(s);
    CHECK_FALSE(r.rooted);
}

TEST_CASE("witnesses re-evaluate to violations") {
    ConfigStructure s = testutil::or_switch_unstable();
    ValidationReport r = validate(s);
    REQUIRE(r.intersection_witness.has_value());
    auto [x, y, z] = *r.intersection_witness;
    auto mx = *s.mask_of(x);
    auto my = *s.mask_of(y);
    auto mz = *s.mask_of(z);
    CHECK(((mx | my) & ~mz) == 0);                       // bounded
    CHECK_FALSE(s.config_index(mx & my).has_value());    // intersection missing
}

TEST_CASE("report text has one line per axiom") {
    std::string text = validate(testutil::or_switch_unstable()).to_text();
    CHECK(text.find("rooted: PASS") != std::string::npos);
    CHECK(text.find("boundedIntersections: FAIL [X={0,b} Y={1,b} Z={0,1,b}]") != std::string::npos);
    CHECK(text.find("stable: FAIL") != std::string::npos);
}

TEST_CASE("capacity guard rejects oversized structures") {
    Limits tight;
    tight.max_events = 2;
    CHECK_THROWS_AS(validate(testutil::S("a|b|c"), tight), CapacityError);
    Limits few_configs;
    few_configs.max_configs = 3;
    CHECK_THROWS_AS(validate(testutil::S("a|b"), few_configs), CapacityError);
}

TEST_CASE("require_stable names the failing axiom") {
    CHECK_NOTHROW(require_stable(testutil::S("a|b")));
    CHECK_THROWS_WITH_AS(require_stable(testutil::or_switch_unstable()),
                         doctest::Contains("boundedIntersections"), InputError);
}
