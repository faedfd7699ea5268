#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace spinchain::cli {

// Ordered key/value lines embedded in every output: artifact version, spec,
// convention note, tolerances. Keys keep insertion order in all formats.
struct Provenance {
  std::vector<std::pair<std::string, std::string>> fields;

  void add(std::string key, std::string value) {
    fields.emplace_back(std::move(key), std::move(value));
  }
};

// One emitted table: named columns plus rows of JSON values (number, string,
// or bool). The same cells feed the CSV and JSON writers so the two formats
// can never disagree.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<nlohmann::json>> rows;

  void add_row(std::vector<nlohmann::json> cells);
};

// Deterministic double rendering (shortest round-trip form, as in JSON).
std::string render_number(double v);

// CSV: '#'-prefixed provenance lines, a header row, comma separator, decimal
// point, LF endings, UTF-8. Fields containing separators are quoted.
std::string to_csv(const Provenance& prov, const Table& table);

// JSON object {"provenance": {...}, "rows": [array of row objects]}.
std::string to_json(const Provenance& prov, const Table& table);

// Writes to the path, or to stdout when the path is empty.
void write_output(const std::string& path, const std::string& content);

}  // namespace spinchain::cli
