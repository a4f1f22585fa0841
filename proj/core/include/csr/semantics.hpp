#pragma once

#include <map>

#include "csr/structure.hpp"

namespace csr {

/// Causal order and concurrency of one configuration.  leq includes the
/// reflexive pairs; concurrent lists unordered distinct pairs once, with the
/// lexicographically smaller id first.
struct CausalContext {
    Configuration configuration;
    std::vector<std::pair<std::string, std::string>> leq;
    std::vector<std::pair<std::string, std::string>> strictly;
    std::vector<std::pair<std::string, std::string>> concurrent;
};

CausalContext causality(const ConfigStructure& s, const Configuration& x);

struct DepthMap {
    Configuration configuration;
    std::map<std::string, int> depth;
};

/// Depth of every event of x: the length of the longest causal chain up to
/// and including the event.
DepthMap depths(const ConfigStructure& s, const Configuration& x);

Configuration minimal_events(const ConfigStructure& s, const Configuration& x);

/// Residual structure over configurations that extend m without adding new
/// minimal events.  Requires m to be a configuration all of whose events are
/// minimal; the result of a stable structure is stable.
ConfigStructure lift(const ConfigStructure& s, const Configuration& m);

Configuration slice_range(const ConfigStructure& s, const Configuration& x, int m, int n);
Configuration slice_leq(const ConfigStructure& s, const Configuration& x, int n);
Configuration slice_geq(const ConfigStructure& s, const Configuration& x, int m);

struct AutoConcurrencyWitness {
    Configuration configuration;
    std::string first_event;
    std::string second_event;
};

struct AutoConcurrencyReport {
    bool has_auto_concurrency = false;
    std::optional<AutoConcurrencyWitness> auto_witness;
    bool has_equidepth_auto_concurrency = false;
    std::optional<AutoConcurrencyWitness> equidepth_witness;
};

/// Scans all configurations for distinct concurrent events with equal labels,
/// and for such pairs that additionally share a depth.  Rejects non-stable
/// input.
AutoConcurrencyReport auto_concurrency(const ConfigStructure& s, const Limits& limits = {});

}  // namespace csr
