#include "csr/corpus.hpp"

namespace csr {

namespace {

using K = EquivalenceKind;

std::map<K, bool> expect(bool ib, bool sb, bool db, bool rb, bool rsb, bool hh) {
    // rsb, rhsb, rhesb and rdb always coincide.
    return {{K::IB, ib},   {K::SB, sb},     {K::DB, db},    {K::RB, rb},  {K::RSB, rsb},
            {K::RHSB, rsb}, {K::RHESB, rsb}, {K::RDB, rsb}, {K::HH, hh}};
}

}  // namespace

const std::vector<CorpusEntry>& builtin_corpus() {
    static const std::vector<CorpusEntry> corpus = {
        {"interleaving-law",
         "a|b against a.b+b.a: interleavings agree, steps and reverses do not",
         "a|b", "a.b + b.a",
         expect(true, false, false, false, false, false)},
        {"auto-concurrency",
         "a|a against a.a: single moves cannot see the {a,a} step",
         "a|a", "a.a",
         expect(true, false, false, true, false, false)},
        {"step-vs-reverse-step",
         "a|a against (a|a)+a.a: forward steps agree, the reverse {a,a} step does not",
         "a|a", "(a|a) + a.a",
         expect(true, true, false, true, false, false)},
        {"absorption",
         "the absorption law: steps and depths agree, reverse moves do not",
         "(a|(b+c)) + (a|b) + ((a+c)|b)", "(a|(b+c)) + ((a+c)|b)",
         expect(true, true, true, false, false, false)},
        {"depth-law",
         "a|b against (a|b)+a.b: steps agree, depth-indexed singles do not",
         "a|b", "(a|b) + a.b",
         expect(true, true, false, false, false, false)},
        {"choice-idempotence",
         "a against a+a: equivalent under every kind",
         "a", "a + a",
         expect(true, true, true, true, true, true)},
    };
    return corpus;
}

}  // namespace csr
