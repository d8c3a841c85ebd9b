#include "output.hpp"

#include <fstream>
#include <sstream>

namespace casimir::cli {

std::string to_csv(const OutputRecord& record) {
  std::ostringstream os;
  for (size_t i = 0; i < record.columns.size(); ++i) {
    if (i) os << ',';
    os << record.columns[i];
  }
  os << '\n';
  for (const auto& row : record.rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      os << row[i];
    }
    os << '\n';
  }
  return os.str();
}

nlohmann::json to_json(const OutputRecord& record,
                       const std::optional<std::string>& timestamp) {
  nlohmann::json j;
  j["schema_version"] = record.schema_version;
  j["command"] = record.command;
  j["units"] = record.units;
  j["parameters"] = record.parameters;
  j["columns"] = record.columns;
  j["rows"] = record.rows;
  j["summary"] = record.summary;
  if (timestamp) j["timestamp"] = *timestamp;
  return j;
}

nlohmann::json cache_key(const OutputRecord& record) {
  nlohmann::json key;
  key["schema_version"] = record.schema_version;
  key["command"] = record.command;
  key["parameters"] = record.parameters;
  return key;
}

namespace {

OutputRecord record_from_json(const nlohmann::json& j) {
  OutputRecord r;
  r.schema_version = j.at("schema_version").get<std::string>();
  r.command = j.at("command").get<std::string>();
  r.units = j.at("units").get<std::string>();
  r.parameters = j.at("parameters").get<std::map<std::string, std::string>>();
  r.columns = j.at("columns").get<std::vector<std::string>>();
  r.rows = j.at("rows").get<std::vector<std::vector<std::string>>>();
  r.summary = j.at("summary");
  return r;
}

}  // namespace

std::optional<OutputRecord> cache_lookup(const std::string& path, const nlohmann::json& key) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  std::optional<OutputRecord> found;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    nlohmann::json entry = nlohmann::json::parse(line, nullptr, false);
    if (entry.is_discarded() || !entry.is_object()) continue;  // corrupt line: skip it only
    auto key_it = entry.find("key");
    auto rec_it = entry.find("record");
    if (key_it == entry.end() || rec_it == entry.end()) continue;
    if (*key_it != key) continue;
    try {
      found = record_from_json(*rec_it);
    } catch (const nlohmann::json::exception&) {
      continue;
    }
  }
  return found;
}

void cache_append(const std::string& path, const nlohmann::json& key,
                  const OutputRecord& record) {
  nlohmann::json entry;
  entry["key"] = key;
  entry["record"] = to_json(record, std::nullopt);
  std::ofstream out(path, std::ios::app);
  if (!out) throw std::runtime_error("cache: cannot open " + path);
  out << entry.dump() << '\n';
}

}  // namespace casimir::cli
