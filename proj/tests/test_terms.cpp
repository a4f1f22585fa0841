#include <random>

#include "doctest.h"

#include "csr/equivalence.hpp"
#include "csr/term.hpp"
#include "csr/validate.hpp"
#include "support/util.hpp"

using namespace csr;
using testutil::S;

TEST_CASE("parsing follows the precedence prefix > | > +") {
    Term t = parse_term("a.b + b.a");
    REQUIRE(t.op == Term::Op::Choice);
    CHECK(t.children[0].op == Term::Op::Prefix);
    CHECK(t.children[0].label == "a");
    CHECK(t.children[0].children[0].label == "b");
    CHECK(t.children[1].label == "b");

    Term u = parse_term("a | b + c");
    CHECK(u.op == Term::Op::Choice);  // (a|b) + c
    CHECK(u.children[0].op == Term::Op::Par);

    Term v = parse_term("a.b | c");
    CHECK(v.op == Term::Op::Par);
    CHECK(v.children[0].op == Term::Op::Prefix);

    CHECK(parse_term("a") == parse_term("a.0"));
    CHECK(parse_term("(a | (b + c)) + (a | b) + ((a + c) | b)").op == Term::Op::Choice);
}

TEST_CASE("parse errors carry a position") {
    CHECK_THROWS_AS(parse_term("a..b"), ParseError);
    CHECK_THROWS_AS(parse_term(""), ParseError);
    CHECK_THROWS_AS(parse_term("(a"), ParseError);
    CHECK_THROWS_AS(parse_term("a b"), ParseError);
    CHECK_THROWS_AS(parse_term("+a"), ParseError);
    try {
        parse_term("a..b");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.position() == 2);
        CHECK(std::string(e.what()).find("offset 2") != std::string::npos);
    }
}

TEST_CASE("translation of the standard examples") {
    ConfigStructure par = S("a | a");
    CHECK(par.event_count() == 2);
    CHECK(par.config_count() == 4);

    ConfigStructure chain = S("a.a");
    CHECK(chain.event_count() == 2);
    CHECK(chain.config_count() == 3);
    CHECK(chain.config_index(testutil::ids({"e1"})).has_value());
    CHECK_FALSE(chain.config_index(testutil::ids({"e2"})).has_value());

    ConfigStructure race = S("a.b + b.a");
    CHECK(race.event_count() == 4);
    CHECK(race.config_count() == 5);

    ConfigStructure nil = S("0");
    CHECK(nil.event_count() == 0);
    CHECK(nil.config_count() == 1);
}

TEST_CASE("translation is deterministic including event ids") {
    ConfigStructure a = S("(a|(b+c)) + (a|b)");
    ConfigStructure b = S("(a|(b+c)) + (a|b)");
    CHECK(a == b);
    CHECK(a.event(0).id == "e1");
}

TEST_CASE("every random term translates to a stable structure") {
    std::mt19937_64 rng(20240811);
    auto gen_term = [&](auto&& self, int depth) -> std::string {
        int pick = static_cast<int>(rng() % (depth >= 5 ? 2 : 5));
        std::string a(1, static_cast<char>('a' + rng() % 3));
        switch (pick) {
            case 0: return "0";
            case 1: return a;
            case 2: return a + "." + self(self, depth + 1);
            case 3: return "(" + self(self, depth + 1) + "+" + self(self, depth + 1) + ")";
            default: return "(" + self(self, depth + 1) + "|" + self(self, depth + 1) + ")";
        }
    };
    int translated = 0;
    for (int i = 0; i < 200; ++i) {
        std::string text = gen_term(gen_term, 0);
        try {
            ConfigStructure s = translate(text);
            CHECK(validate(s).stable());
            ++translated;
        } catch (const CapacityError&) {
            // oversized sample; fine
        }
    }
    CHECK(translated > 100);
}

TEST_CASE("translation enforces the capacity guard") {
    Limits tight;
    tight.max_events = 3;
    CHECK_THROWS_AS(translate("a|b|c|d", tight), CapacityError);
}

TEST_CASE("interleaving law holds for ib on translated terms") {
    Verdict v = check(EquivalenceKind::IB, S("a | b"), S("a.b + b.a"));
    CHECK(v.equivalent);
}
