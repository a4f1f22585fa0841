#pragma once

#include <cstdint>

#include "csr/structure.hpp"

namespace csr {

enum class GenMode { PrimeES, Rejection, Gadget };

struct GenParams {
    int max_events = 6;
    int label_alphabet = 3;
    double causal_density = 0.3;  // also the inclusion probability of rejection mode
    double conflict_density = 0.2;
    std::uint64_t seed = 0;
    GenMode mode = GenMode::PrimeES;
    int rejection_budget = 200;
};

/// Random stable configuration structure, deterministic per params.
///   PrimeES   left-closed conflict-free sets of a random ordered/conflicting
///             event set; always stable and intersection-closed.
///   Rejection random set families kept when they validate (tiny sizes only);
///             gives up with CapacityError after rejection_budget attempts.
///   Gadget    an exclusive-or causation gadget composed in parallel with a
///             PrimeES sample; stable but not intersection-closed.
ConfigStructure generate(const GenParams& params, const Limits& limits = {});

/// Per-instance seed derivation (splitmix-style), so instance i of a run is
/// independent of the others but fixed for a given master seed.
std::uint64_t mix_seed(std::uint64_t master, std::uint64_t index);

}  // namespace csr
