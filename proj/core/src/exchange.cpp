#include "csr/exchange.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace csr {

using nlohmann::json;

ConfigStructure structure_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("invalid json: ") + e.what());
    }
    if (!doc.is_object()) throw InputError("structure document must be an object");
    for (auto it = doc.begin(); it != doc.end(); ++it) {
        if (it.key() != "events" && it.key() != "configurations") {
            throw InputError("unexpected field '" + it.key() + "'");
        }
    }
    if (!doc.contains("events") || !doc.contains("configurations")) {
        throw InputError("structure document needs 'events' and 'configurations'");
    }

    std::vector<Event> events;
    if (!doc["events"].is_array()) throw InputError("'events' must be an array");
    for (const json& ev : doc["events"]) {
        if (!ev.is_object() || !ev.contains("id") || !ev.contains("label") ||
            !ev["id"].is_string() || !ev["label"].is_string() || ev.size() != 2) {
            throw InputError("each event must be an object {id, label}");
        }
        events.push_back({ev["id"].get<std::string>(), ev["label"].get<std::string>()});
    }

    std::vector<Configuration> configurations;
    if (!doc["configurations"].is_array()) throw InputError("'configurations' must be an array");
    for (const json& cfg : doc["configurations"]) {
        if (!cfg.is_array()) throw InputError("each configuration must be an array of event ids");
        Configuration ids;
        for (const json& id : cfg) {
            if (!id.is_string()) throw InputError("event ids must be strings");
            ids.push_back(id.get<std::string>());
        }
        for (std::size_t i = 1; i < ids.size(); ++i) {
            if (ids[i - 1] >= ids[i]) {
                throw InputError("configuration ids must be strictly sorted: " +
                                 render_configuration(ids));
            }
        }
        configurations.push_back(std::move(ids));
    }
    return ConfigStructure::make(std::move(events), configurations);
}

std::string structure_to_json(const ConfigStructure& s) {
    json doc;
    doc["events"] = json::array();
    for (const Event& e : s.events()) {
        doc["events"].push_back({{"id", e.id}, {"label", e.label}});
    }
    std::vector<Configuration> lists;
    lists.reserve(static_cast<std::size_t>(s.config_count()));
    for (Mask m : s.configs()) lists.push_back(s.ids_of(m));
    std::sort(lists.begin(), lists.end(), [](const Configuration& a, const Configuration& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    doc["configurations"] = lists;
    return doc.dump(2) + "\n";
}

ConfigStructure load_structure(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return structure_from_json(buf.str());
}

void save_structure(const ConfigStructure& s, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write '" + path + "'");
    out << structure_to_json(s);
}

}  // namespace csr
