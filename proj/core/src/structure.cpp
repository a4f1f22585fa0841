#include "csr/structure.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "detail/bits.hpp"

namespace csr {

ConfigStructure ConfigStructure::make(std::vector<Event> events,
                                      const std::vector<Configuration>& configurations) {
    std::map<std::string, int> index;
    for (std::size_t i = 0; i < events.size(); ++i) {
        index[events[i].id] = static_cast<int>(i);
    }
    std::vector<Mask> masks;
    masks.reserve(configurations.size());
    for (const Configuration& cfg : configurations) {
        Mask m = 0;
        for (const std::string& id : cfg) {
            auto it = index.find(id);
            if (it == index.end()) {
                throw InputError("configuration refers to unknown event id '" + id + "'");
            }
            Mask b = detail::bit(it->second);
            if (m & b) {
                throw InputError("duplicate event id '" + id + "' within one configuration");
            }
            m |= b;
        }
        masks.push_back(m);
    }
    return from_masks(std::move(events), std::move(masks));
}

ConfigStructure ConfigStructure::from_masks(std::vector<Event> events, std::vector<Mask> configs) {
    if (events.size() > static_cast<std::size_t>(max_event_bits)) {
        throw CapacityError("structures with more than 64 events are not representable");
    }
    for (const Event& e : events) {
        if (e.id.empty()) throw InputError("event id must be non-empty");
        if (e.label.empty()) throw InputError("event label must be non-empty");
    }

    // Sort events by id and remap masks onto the canonical bit order.
    std::vector<int> order(events.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return events[static_cast<std::size_t>(a)].id <
                                         events[static_cast<std::size_t>(b)].id; });
    std::vector<int> new_pos(events.size());
    std::vector<Event> sorted;
    sorted.reserve(events.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        new_pos[static_cast<std::size_t>(order[i])] = static_cast<int>(i);
        sorted.push_back(std::move(events[static_cast<std::size_t>(order[i])]));
    }
    for (std::size_t i = 1; i < sorted.size(); ++i) {
        if (sorted[i - 1].id == sorted[i].id) {
            throw InputError("duplicate event id '" + sorted[i].id + "'");
        }
    }
    for (Mask& m : configs) {
        Mask remapped = 0;
        detail::for_each_bit(m, [&](int b) { remapped |= detail::bit(new_pos[static_cast<std::size_t>(b)]); });
        m = remapped;
    }

    std::sort(configs.begin(), configs.end());
    for (std::size_t i = 1; i < configs.size(); ++i) {
        if (configs[i - 1] == configs[i]) {
            throw InputError("duplicate configuration");
        }
    }

    Mask used = 0;
    for (Mask m : configs) used |= m;
    Mask all = events.size() == 64 ? ~Mask{0}
                                   : detail::bit(static_cast<int>(sorted.size())) - 1;
    if (used != all) {
        detail::for_each_bit(all & ~used, [&](int b) {
            throw InputError("event '" + sorted[static_cast<std::size_t>(b)].id +
                             "' does not occur in any configuration");
        });
    }

    ConfigStructure s;
    s.events_ = std::move(sorted);
    s.configs_ = std::move(configs);
    s.labels_.reserve(s.events_.size());
    for (const Event& e : s.events_) s.labels_.push_back(e.label);
    std::sort(s.labels_.begin(), s.labels_.end());
    s.labels_.erase(std::unique(s.labels_.begin(), s.labels_.end()), s.labels_.end());
    s.label_of_.reserve(s.events_.size());
    for (const Event& e : s.events_) {
        auto it = std::lower_bound(s.labels_.begin(), s.labels_.end(), e.label);
        s.label_of_.push_back(static_cast<int>(it - s.labels_.begin()));
    }
    return s;
}

int ConfigStructure::event_index(std::string_view id) const {
    auto it = std::lower_bound(events_.begin(), events_.end(), id,
                               [](const Event& e, std::string_view v) { return e.id < v; });
    if (it == events_.end() || it->id != id) return -1;
    return static_cast<int>(it - events_.begin());
}

int ConfigStructure::label_index(std::string_view label) const {
    auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
    if (it == labels_.end() || *it != label) return -1;
    return static_cast<int>(it - labels_.begin());
}

std::optional<int> ConfigStructure::config_index(Mask mask) const {
    auto it = std::lower_bound(configs_.begin(), configs_.end(), mask);
    if (it == configs_.end() || *it != mask) return std::nullopt;
    return static_cast<int>(it - configs_.begin());
}

std::optional<int> ConfigStructure::config_index(const Configuration& ids) const {
    auto m = mask_of(ids);
    if (!m) return std::nullopt;
    return config_index(*m);
}

std::optional<Mask> ConfigStructure::mask_of(const Configuration& ids) const {
    Mask m = 0;
    for (const std::string& id : ids) {
        int i = event_index(id);
        if (i < 0) return std::nullopt;
        m |= detail::bit(i);
    }
    return m;
}

Configuration ConfigStructure::ids_of(Mask mask) const {
    Configuration ids;
    detail::for_each_bit(mask, [&](int b) { ids.push_back(events_[static_cast<std::size_t>(b)].id); });
    return ids;  // events sorted by id, so the result is already sorted
}

std::string ConfigStructure::render(Mask mask) const { return render_configuration(ids_of(mask)); }

Mask ConfigStructure::full_mask() const {
    Mask m = 0;
    for (Mask c : configs_) m |= c;
    return m;
}

ConfigStructure rename_events(const ConfigStructure& s, const std::string& prefix) {
    std::vector<Event> events;
    events.reserve(s.events().size());
    for (const Event& e : s.events()) events.push_back({prefix + e.id, e.label});
    return ConfigStructure::from_masks(std::move(events), s.configs());
}

std::string render_configuration(const Configuration& ids) {
    std::ostringstream out;
    out << '[';
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (i) out << ',';
        out << ids[i];
    }
    out << ']';
    return out.str();
}

}  // namespace csr
