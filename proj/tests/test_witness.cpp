#include <functional>

#include "doctest.h"

#include "csr/corpus.hpp"
#include "csr/equivalence.hpp"
#include "support/util.hpp"

using namespace csr;
using testutil::S;
using K = EquivalenceKind;

namespace {

void collect_moves(const WitnessTree& tree,
                   std::vector<std::pair<Direction, std::vector<std::string>>>& out) {
    out.emplace_back(tree.attacker_move.direction, tree.attacker_move.labels);
    for (const WitnessResponse& resp : tree.responses) collect_moves(resp.next, out);
}

bool contains_move(const WitnessTree& tree, Direction dir, std::vector<std::string> labels) {
    std::vector<std::pair<Direction, std::vector<std::string>>> moves;
    collect_moves(tree, moves);
    return std::find(moves.begin(), moves.end(), std::make_pair(dir, labels)) != moves.end();
}

}  // namespace

TEST_CASE("every witness on the corpus replays") {
    CheckOptions options;
    options.want_witness = true;
    for (const CorpusEntry& entry : builtin_corpus()) {
        ConfigStructure left = S(entry.left_term);
        ConfigStructure right = S(entry.right_term);
        for (K kind : all_equivalence_kinds) {
            Verdict v = check(kind, left, right, options);
            if (v.equivalent) {
                CHECK_FALSE(v.witness.has_value());
                continue;
            }
            REQUIRE_MESSAGE(v.witness.has_value(),
                            entry.name << " " << kind_name(kind) << " lacks a witness");
            std::string why;
            CHECK_MESSAGE(replay_witness(kind, left, right, *v.witness, &why),
                          entry.name << " " << kind_name(kind) << ": " << why);
        }
    }
}

TEST_CASE("the rsb witness for a|a vs (a|a)+a.a uses the reverse {a,a} step") {
    CheckOptions options;
    options.want_witness = true;
    Verdict v = check(K::RSB, S("a|a"), S("(a|a) + a.a"), options);
    REQUIRE_FALSE(v.equivalent);
    REQUIRE(v.witness.has_value());
    CHECK(contains_move(*v.witness, Direction::Reverse, {"a", "a"}));
    std::string why;
    CHECK_MESSAGE(replay_witness(K::RSB, S("a|a"), S("(a|a) + a.a"), *v.witness, &why), why);
}

TEST_CASE("the rb witness for the absorption law plays fwd a, fwd b, rev a, fwd c") {
    ConfigStructure lhs = S("(a|(b+c)) + (a|b) + ((a+c)|b)");
    ConfigStructure rhs = S("(a|(b+c)) + ((a+c)|b)");
    CheckOptions options;
    options.want_witness = true;
    Verdict v = check(K::RB, lhs, rhs, options);
    REQUIRE_FALSE(v.equivalent);
    REQUIRE(v.witness.has_value());
    CHECK(contains_move(*v.witness, Direction::Forward, {"a"}));
    CHECK(contains_move(*v.witness, Direction::Forward, {"b"}));
    CHECK(contains_move(*v.witness, Direction::Reverse, {"a"}));
    CHECK(contains_move(*v.witness, Direction::Forward, {"c"}));
    std::string why;
    CHECK_MESSAGE(replay_witness(K::RB, lhs, rhs, *v.witness, &why), why);
}

TEST_CASE("witnesses for pre-filtered root mismatches replay too") {
    // Label multisets diverge immediately; the strategy reverses to the root.
    CheckOptions options;
    options.want_witness = true;
    Verdict v = check(K::RB, S("a.b"), S("a.c"), options);
    REQUIRE_FALSE(v.equivalent);
    REQUIRE(v.witness.has_value());
    std::string why;
    CHECK_MESSAGE(replay_witness(K::RB, S("a.b"), S("a.c"), *v.witness, &why), why);
}

TEST_CASE("hh witnesses replay") {
    CheckOptions options;
    options.want_witness = true;
    ConfigStructure left = S("a|b");
    ConfigStructure right = S("a.b + b.a");
    Verdict v = check(K::HH, left, right, options);
    REQUIRE_FALSE(v.equivalent);
    REQUIRE(v.witness.has_value());
    std::string why;
    CHECK_MESSAGE(replay_witness(K::HH, left, right, *v.witness, &why), why);
}

TEST_CASE("tampered witnesses fail the replay") {
    CheckOptions options;
    options.want_witness = true;
    ConfigStructure left = S("a|a");
    ConfigStructure right = S("a.a");
    Verdict v = check(K::SB, left, right, options);
    REQUIRE(v.witness.has_value());

    SUBCASE("illegal attacker move") {
        WitnessTree bad = *v.witness;
        bad.attacker_move.labels = {"z"};
        CHECK_FALSE(replay_witness(K::SB, left, right, bad, nullptr));
    }
    SUBCASE("dropped defender branch") {
        WitnessTree bad = *v.witness;
        std::function<bool(WitnessTree&)> drop = [&](WitnessTree& node) {
            if (node.responses.size() > 1) {
                node.responses.pop_back();
                return true;
            }
            for (WitnessResponse& resp : node.responses) {
                if (drop(resp.next)) return true;
            }
            return false;
        };
        if (drop(bad)) CHECK_FALSE(replay_witness(K::SB, left, right, bad, nullptr));
    }
    SUBCASE("truncated branch claims a win too early") {
        WitnessTree bad = *v.witness;
        if (!bad.responses.empty()) {
            bad.responses.front().next.responses.clear();
            CHECK_FALSE(replay_witness(K::SB, left, right, bad, nullptr));
        }
    }
    SUBCASE("wrong kind") {
        CHECK_FALSE(replay_witness(K::IB, left, right, *v.witness, nullptr));
    }
}

TEST_CASE("witness json renders and parses") {
    CheckOptions options;
    options.want_witness = true;
    Verdict v = check(K::RSB, S("a|a"), S("(a|a) + a.a"), options);
    std::string json = render_verdict_json(v);
    CHECK(json.find("\"kind\": \"rsb\"") != std::string::npos);
    CHECK(json.find("\"witness\"") != std::string::npos);
    CHECK(render_verdict_text(v).find("rsb: inequivalent") == 0);
    CHECK(render_witness_text(*v.witness).find("attacker") != std::string::npos);
}
