#pragma once

#include "csr/generate.hpp"
#include "csr/structure.hpp"

namespace csr {

struct LawParams {
    std::vector<std::string> laws;  // empty selects every known law
    int count = 100;                // generated instances per law
    std::uint64_t seed = 1;
    int max_events = 8;
    int label_alphabet = 3;
    bool include_corpus = true;  // prepend the built-in corpus pairs
};

struct LawViolation {
    int instance = 0;
    std::string detail;
    std::string left_json;   // exchange documents of the offending pair
    std::string right_json;
};

struct LawReport {
    std::string law;
    int instances = 0;
    std::vector<LawViolation> violations;
    std::vector<std::string> findings;  // informational observations, not failures
    int capacity_skips = 0;
    double elapsed_ms = 0.0;
};

const std::vector<std::string>& known_laws();

/// Runs each law over the corpus pairs plus `count` generated pairs.  Every
/// violation is re-verified standalone (through a serialisation round-trip)
/// before it is reported.  Capacity errors skip the instance.
std::vector<LawReport> run_laws(const LawParams& params, const Limits& limits = {});

/// The i-th generated pair a law runs on (excluding the corpus prefix).
std::pair<ConfigStructure, ConfigStructure> law_instance(const std::string& law,
                                                         const LawParams& params, int index,
                                                         const Limits& limits = {});

}  // namespace csr
