#include "tandet/store.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>

#include "tandet/errors.hpp"

namespace tandet::store {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

ResultStore::ResultStore(std::string path) : path_(std::move(path)) {
    std::ifstream in(path_);
    if (!in) return;
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        ordered_json j = ordered_json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.contains("key") || !j.contains("payload"))
            throw param_error("store: malformed line " + std::to_string(lineno) + " in " + path_);
        entries_[j["key"].get<std::string>()] = j["payload"];
    }
}

std::optional<ordered_json> ResultStore::lookup(const std::string& key) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

void ResultStore::append(const std::string& key, const ordered_json& payload) {
    if (entries_.count(key)) return;  // append-only, first write wins
    fs::path p(path_);
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    std::ofstream out(path_, std::ios::app);
    if (!out) throw param_error("store: cannot open " + path_ + " for append");
    ordered_json j;
    j["key"] = key;
    auto now = std::chrono::system_clock::now().time_since_epoch();
    j["created_at"] =
        std::to_string(std::chrono::duration_cast<std::chrono::milliseconds>(now).count());
    j["payload"] = payload;
    out << j.dump() << "\n";
    entries_[key] = payload;
}

ordered_json canonicalize(ordered_json j) {
    if (j.is_object()) {
        j.erase("created_at");
        if (j.contains("runtime_ms")) j["runtime_ms"] = 0;
        for (auto& [k, v] : j.items()) v = canonicalize(v);
    } else if (j.is_array()) {
        for (auto& v : j) v = canonicalize(v);
    }
    return j;
}

}  // namespace tandet::store
