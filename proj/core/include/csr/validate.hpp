#pragma once

#include <array>

#include "csr/structure.hpp"

namespace csr {

/// Outcome of the stability axioms plus the (informational) closure under all
/// intersections.  Every failure carries a concrete witness that re-evaluates
/// to a violation.
struct ValidationReport {
    bool rooted = false;
    bool connected = false;
    std::optional<Configuration> connected_witness;
    bool bounded_unions = false;
    std::optional<std::array<Configuration, 3>> union_witness;  // X, Y, Z
    bool bounded_intersections = false;
    std::optional<std::array<Configuration, 3>> intersection_witness;
    bool prime_intersections = false;
    std::optional<std::array<Configuration, 2>> prime_witness;

    bool stable() const { return rooted && connected && bounded_unions && bounded_intersections; }

    /// One line per axiom: "<axiom>: PASS|FAIL [witness ...]".
    std::string to_text() const;
};

ValidationReport validate(const ConfigStructure& s, const Limits& limits = {});

/// Throws InputError naming the first failing axiom unless the structure is
/// stable.  CapacityError passes through.
void require_stable(const ConfigStructure& s, const Limits& limits = {});

}  // namespace csr
