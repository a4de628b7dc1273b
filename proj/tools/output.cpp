#include "output.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <stdexcept>
#include <system_error>

#include <openssl/evp.h>
#include <unistd.h>

#include "pulsent/version.hpp"
#include "schema_data.hpp"

namespace pulsent::cli {

Format parse_format(const std::string& s) {
  if (s == "csv") return Format::csv;
  if (s == "json") return Format::json;
  if (s == "both") return Format::both;
  throw std::invalid_argument("format must be csv, json or both (got '" + s + "')");
}

const json& column_schema() {
  static const json schema = json::parse(schema_columns_json);
  return schema;
}

const std::vector<std::string>& columns_for(const std::string& kind) {
  static const auto table = [] {
    std::map<std::string, std::vector<std::string>> m;
    for (const auto& [k, v] : column_schema().at("tables").items())
      m[k] = v.get<std::vector<std::string>>();
    return m;
  }();
  const auto it = table.find(kind);
  if (it == table.end()) throw std::logic_error("no schema for table kind '" + kind + "'");
  return it->second;
}

Table::Table(std::string k, std::string n)
    : kind(std::move(k)), name(std::move(n)), columns(columns_for(kind)) {}

void Table::add(std::vector<json> row) {
  if (row.size() != columns.size())
    throw std::logic_error("table " + name + ": row has " + std::to_string(row.size()) +
                           " fields, schema has " + std::to_string(columns.size()));
  rows.push_back(std::move(row));
}

std::string sha256_hex(std::string_view data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr))
    throw std::runtime_error("sha256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

std::string csv_field(const json& v) {
  if (v.is_null()) return "";
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number_unsigned()) return std::to_string(v.get<unsigned long long>());
  if (v.is_number_float()) {
    const double x = v.get<double>();
    if (!std::isfinite(x)) return std::isnan(x) ? "" : (x > 0 ? "inf" : "-inf");
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, r.ptr);
  }
  const std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

std::string to_csv(const RunRecord& rec, const Table& t) {
  std::string out;
  out += "# pulsent " + std::string(pulsent::version) + "\n";
  out += "# command: " + rec.command + "\n";
  out += "# scenario: " + rec.scenario + "\n";
  out += "# table: " + t.name + "\n";
  out += "# config-sha256: " + rec.digest + "\n";
  for (std::size_t i = 0; i < t.columns.size(); ++i) out += (i ? "," : "") + t.columns[i];
  out += "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + csv_field(row[i]);
    out += "\n";
  }
  return out;
}

namespace {

json header(const RunRecord& rec) {
  return json{{"pulsent_version", pulsent::version},
              {"command", rec.command},
              {"scenario", rec.scenario},
              {"config_sha256", rec.digest}};
}

json table_json(const Table& t) {
  // Non-finite numbers have no JSON form; they are written as null.
  json rows = json::array();
  for (const auto& r : t.rows) {
    json row = json::array();
    for (const auto& v : r) row.push_back(v.is_number_float() && !std::isfinite(v.get<double>()) ? json() : v);
    rows.push_back(std::move(row));
  }
  return json{{"name", t.name},
              {"kind", t.kind},
              {"columns", t.columns},
              {"rows", std::move(rows)},
              {"diagnostics", t.diagnostics}};
}

}  // namespace

json to_json(const RunRecord& rec, const Table& t) {
  json j = header(rec);
  j["table"] = table_json(t);
  return j;
}

json to_json(const RunRecord& rec) {
  json j = header(rec);
  j["tables"] = json::array();
  for (const auto& t : rec.tables) j["tables"].push_back(table_json(t));
  j["diagnostics"] = rec.diagnostics;
  return j;
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp-" + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    f << content;
    f.flush();
    if (!f) {
      f.close();
      std::filesystem::remove(tmp);
      throw std::runtime_error("write failed: " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw std::runtime_error("cannot rename into " + path.string() + ": " + ec.message());
  }
}

std::vector<std::filesystem::path> emit(const RunRecord& rec, const std::filesystem::path& dir,
                                        Format format) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written;
  for (const auto& t : rec.tables) {
    if (format != Format::json) {
      written.push_back(dir / (t.name + ".csv"));
      write_atomic(written.back(), to_csv(rec, t));
    }
    if (format != Format::csv) {
      written.push_back(dir / (t.name + ".json"));
      write_atomic(written.back(), to_json(rec, t).dump() + "\n");
    }
  }
  return written;
}

}  // namespace pulsent::cli
