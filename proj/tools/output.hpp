#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace pulsent::cli {

using json = nlohmann::json;

enum class Format { csv, json, both };

Format parse_format(const std::string& s);

// Column lists frozen in schema/columns.json, embedded at build time.
const json& column_schema();
const std::vector<std::string>& columns_for(const std::string& kind);

struct Table {
  std::string kind;  // schema key
  std::string name;  // file stem
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;
  json diagnostics = json::object();

  Table(std::string kind, std::string name);
  void add(std::vector<json> row);
};

struct RunRecord {
  std::string command;
  std::string scenario;
  std::string digest;
  std::vector<Table> tables;
  json diagnostics = json::object();
};

std::string sha256_hex(std::string_view data);

// Shortest representation that round-trips; NaN and null become empty fields.
std::string csv_field(const json& v);

std::string to_csv(const RunRecord& rec, const Table& t);
json to_json(const RunRecord& rec, const Table& t);
json to_json(const RunRecord& rec);

// Writes to a sibling temporary file and renames it over `path`.
void write_atomic(const std::filesystem::path& path, const std::string& content);

std::vector<std::filesystem::path> emit(const RunRecord& rec, const std::filesystem::path& dir,
                                        Format format);

}  // namespace pulsent::cli
