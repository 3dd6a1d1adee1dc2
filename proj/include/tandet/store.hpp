#pragma once

#include <map>
#include <optional>
#include <string>

#include "json.hpp"

namespace tandet::store {

// Append-only JSONL result store. Each line is {"key", "created_at",
// "payload"}; replaying a key returns the stored payload bit-identically.
class ResultStore {
  public:
    explicit ResultStore(std::string path);

    std::optional<nlohmann::ordered_json> lookup(const std::string& key) const;
    void append(const std::string& key, const nlohmann::ordered_json& payload);

    const std::string& path() const { return path_; }
    size_t size() const { return entries_.size(); }

  private:
    std::string path_;
    std::map<std::string, nlohmann::ordered_json> entries_;
};

// strip volatile fields (timestamps, runtimes) for byte-compare mode
nlohmann::ordered_json canonicalize(nlohmann::ordered_json j);

}  // namespace tandet::store
