#include "doctest.h"

#include "csr/structure.hpp"
#include "support/util.hpp"

using namespace csr;

TEST_CASE("events are canonicalised by id") {
    ConfigStructure s = ConfigStructure::make({{"b", "x"}, {"a", "y"}}, {{}, {"a"}, {"a", "b"}});
    CHECK(s.event(0).id == "a");
    CHECK(s.event(1).id == "b");
    CHECK(s.event_index("b") == 1);
    CHECK(s.event_index("zzz") == -1);
    CHECK(s.config_count() == 3);
    CHECK(s.ids_of(s.config_mask(2)) == testutil::ids({"a", "b"}));
}

TEST_CASE("construction rejects malformed input") {
    CHECK_THROWS_AS(ConfigStructure::make({{"a", "x"}, {"a", "y"}}, {{}}), InputError);
    CHECK_THROWS_AS(ConfigStructure::make({{"a", "x"}}, {{}, {"a"}, {"a"}}), InputError);
    CHECK_THROWS_AS(ConfigStructure::make({{"a", "x"}}, {{}, {"b"}}), InputError);
    CHECK_THROWS_AS(ConfigStructure::make({{"a", "x"}}, {{}}), InputError);  // unused event
    CHECK_THROWS_AS(ConfigStructure::make({{"", "x"}}, {{""}}), InputError);
    CHECK_THROWS_AS(ConfigStructure::make({{"a", ""}}, {{"a"}}), InputError);
    CHECK_THROWS_AS(ConfigStructure::make({{"a", "x"}}, {{"a", "a"}}), InputError);
}

TEST_CASE("structural equality and lookup") {
    ConfigStructure a = testutil::S("a|b");
    ConfigStructure b = testutil::S("a|b");
    CHECK(a == b);
    CHECK(a.config_index(testutil::ids({"e1", "e2"})).has_value());
    CHECK_FALSE(a.config_index(testutil::ids({"e1", "zzz"})).has_value());
    CHECK(a.full_mask() == 0b11);
}

TEST_CASE("rename keeps family and labels") {
    ConfigStructure s = testutil::S("a.b");
    ConfigStructure r = rename_events(s, "x_");
    CHECK(r.event_count() == 2);
    CHECK(r.event_index("x_e1") >= 0);
    CHECK(r.config_count() == s.config_count());
    CHECK(r.event(r.event_index("x_e1")).label == "a");
}
