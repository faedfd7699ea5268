#include "emit.hpp"

#include <fstream>
#include <iostream>

#include "spinchain/errors.hpp"

namespace spinchain::cli {

namespace {

bool needs_quoting(const std::string& field) {
  return field.find_first_of(",\"\n") != std::string::npos;
}

std::string csv_escape(const std::string& field) {
  if (!needs_quoting(field)) return field;
  std::string out = "\"";
  for (const char c : field) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += '"';
  return out;
}

std::string csv_cell(const nlohmann::json& cell) {
  if (cell.is_string()) return csv_escape(cell.get<std::string>());
  return cell.dump();  // numbers and booleans render like JSON
}

}  // namespace

void Table::add_row(std::vector<nlohmann::json> cells) {
  if (cells.size() != columns.size()) {
    throw InvalidSpec("table row width does not match its column count");
  }
  rows.push_back(std::move(cells));
}

std::string render_number(double v) { return nlohmann::json(v).dump(); }

std::string to_csv(const Provenance& prov, const Table& table) {
  std::string out;
  for (const auto& [key, value] : prov.fields) {
    out += "# " + key + ": " + value + "\n";
  }
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c > 0) out += ',';
    out += csv_escape(table.columns[c]);
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) out += ',';
      out += csv_cell(row[c]);
    }
    out += '\n';
  }
  return out;
}

std::string to_json(const Provenance& prov, const Table& table) {
  nlohmann::ordered_json doc;
  nlohmann::ordered_json meta;
  for (const auto& [key, value] : prov.fields) meta[key] = value;
  doc["provenance"] = std::move(meta);
  doc["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json obj;
    for (std::size_t c = 0; c < row.size(); ++c) obj[table.columns[c]] = row[c];
    doc["rows"].push_back(std::move(obj));
  }
  return doc.dump(2) + "\n";
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    if (!std::cout) throw IoError("failed writing to stdout");
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open output file: " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw IoError("short write to output file: " + path);
}

}  // namespace spinchain::cli
