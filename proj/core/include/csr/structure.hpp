#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace csr {

/// Malformed input: bad documents, unknown identifiers, violated preconditions.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A configurable size guard was exceeded.
class CapacityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Size guards for the quantifier-heavy algorithms.  The defaults keep every
/// worst-case loop bounded; callers may raise them explicitly.
struct Limits {
    int max_events = 16;
    int max_configs = 4096;
    std::size_t max_relation = std::size_t{1} << 20;  // candidate pairs / triples
    std::size_t max_isos_per_pair = 100000;
    std::size_t max_witness_nodes = 200000;
};

struct Event {
    std::string id;
    std::string label;

    bool operator==(const Event&) const = default;
};

/// Event set encoded over the owning structure's canonical event order.
using Mask = std::uint64_t;

/// A configuration named by its lexicographically sorted event identifiers.
using Configuration = std::vector<std::string>;

inline constexpr int max_event_bits = 64;

/// A finite family of configurations together with an event labelling.
/// Events are kept sorted by identifier and configurations sorted by mask,
/// so equal structures compare equal member-wise and all iteration orders
/// are deterministic.
class ConfigStructure {
public:
    ConfigStructure() = default;

    /// Builds a structure from an event list and id-list configurations.
    /// Rejects duplicate events, duplicate configurations, unknown ids,
    /// and events that appear in no configuration.
    static ConfigStructure make(std::vector<Event> events,
                                const std::vector<Configuration>& configurations);

    /// Same checks as make(); bit i of each mask refers to events[i] as given.
    static ConfigStructure from_masks(std::vector<Event> events, std::vector<Mask> configs);

    int event_count() const { return static_cast<int>(events_.size()); }
    const std::vector<Event>& events() const { return events_; }
    const Event& event(int index) const { return events_[static_cast<std::size_t>(index)]; }
    int event_index(std::string_view id) const;  // -1 when unknown

    const std::vector<std::string>& labels() const { return labels_; }
    int label_index(std::string_view label) const;  // -1 when unknown
    int label_of(int event_index) const { return label_of_[static_cast<std::size_t>(event_index)]; }

    int config_count() const { return static_cast<int>(configs_.size()); }
    const std::vector<Mask>& configs() const { return configs_; }
    Mask config_mask(int index) const { return configs_[static_cast<std::size_t>(index)]; }
    std::optional<int> config_index(Mask mask) const;
    std::optional<int> config_index(const Configuration& ids) const;

    /// Mask for a set of event ids; nullopt when some id is unknown.
    std::optional<Mask> mask_of(const Configuration& ids) const;

    Configuration ids_of(Mask mask) const;
    std::string render(Mask mask) const;  // "[e1,e2]"
    Mask full_mask() const;

    bool operator==(const ConfigStructure&) const = default;

private:
    std::vector<Event> events_;        // sorted by id
    std::vector<int> label_of_;        // event index -> label index
    std::vector<std::string> labels_;  // sorted unique
    std::vector<Mask> configs_;        // sorted unique
};

/// Copy with every event id prefixed; the family and labelling are unchanged.
ConfigStructure rename_events(const ConfigStructure& s, const std::string& prefix);

std::string render_configuration(const Configuration& ids);  // "[e1,e2]"

}  // namespace csr
