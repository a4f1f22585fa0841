#include "doctest.h"

#include "csr/equivalence.hpp"
#include "csr/generate.hpp"
#include "csr/laws.hpp"
#include "support/oracle.hpp"
#include "support/util.hpp"

using namespace csr;
using testutil::S;
using K = EquivalenceKind;

TEST_CASE("oracle agrees with the checker on the classic pairs") {
    struct Case {
        const char* left;
        const char* right;
    };
    static const Case cases[] = {
        {"a|a", "a.a"}, {"a", "a + a"}, {"a.a", "a.a"}, {"a.b", "a.c"}, {"a + b", "a"},
    };
    for (const Case& c : cases) {
        ConfigStructure left = S(c.left);
        ConfigStructure right = S(c.right);
        oracle::Structure ol = oracle::from(left);
        oracle::Structure orr = oracle::from(right);
        for (K kind : all_equivalence_kinds) {
            if (kind == K::HH) continue;
            bool expected = oracle::equivalent(kind, ol, orr);
            CHECK_MESSAGE(check(kind, left, right).equivalent == expected,
                          c.left << " vs " << c.right << " kind " << kind_name(kind));
        }
        if (oracle::triple_universe(ol, orr) <= 22) {
            CHECK(check(K::HH, left, right).equivalent == oracle::hh_equivalent(ol, orr));
        }
    }
}

TEST_CASE("oracle agrees with the checker on generated tiny pairs") {
    int accepted = 0;
    for (std::uint64_t attempt = 0; accepted < 8 && attempt < 400; ++attempt) {
        LawParams params;
        params.seed = 7;
        params.max_events = 4;
        params.label_alphabet = 2;
        auto [left, right] = law_instance("hierarchy", params, static_cast<int>(attempt));
        oracle::Structure ol = oracle::from(left);
        oracle::Structure orr = oracle::from(right);
        if (oracle::pair_universe(ol, orr) > 16) continue;
        ++accepted;
        for (K kind : all_equivalence_kinds) {
            if (kind == K::HH) continue;
            CHECK_MESSAGE(check(kind, left, right).equivalent ==
                              oracle::equivalent(kind, ol, orr),
                          "attempt " << attempt << " kind " << kind_name(kind));
        }
        if (oracle::triple_universe(ol, orr) <= 18) {
            CHECK(check(K::HH, left, right).equivalent == oracle::hh_equivalent(ol, orr));
        }
    }
    CHECK(accepted == 8);
}
