#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace casimir::cli {

// One command's tabular result plus enough metadata to reproduce it. Every
// numeric cell is a plain decimal string ('.' separator, 'e' exponent); the
// significant-digit counts used per column are recorded in parameters.
struct OutputRecord {
  std::string schema_version = "1";
  std::string command;
  std::map<std::string, std::string> parameters;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  nlohmann::json summary = nlohmann::json::object();
  std::string units = "beta";
};

// Header line plus rows; no metadata, so CSV output is byte-deterministic.
std::string to_csv(const OutputRecord& record);

nlohmann::json to_json(const OutputRecord& record,
                       const std::optional<std::string>& timestamp);

// Cache key: everything that determines the payload.
nlohmann::json cache_key(const OutputRecord& record);

// JSON-lines cache. A malformed line invalidates only itself; later
// duplicate keys win (append-only updates).
std::optional<OutputRecord> cache_lookup(const std::string& path, const nlohmann::json& key);
void cache_append(const std::string& path, const nlohmann::json& key,
                  const OutputRecord& record);

}  // namespace casimir::cli
