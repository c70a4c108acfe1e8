#include <charconv>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "vacuum/cli.hpp"

namespace vacuum::cli {

namespace {

constexpr const char* kUnitsNote = "densities in units of alpha*hbar*c";

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

std::string render(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) {
          return format_number(v);
        } else if constexpr (std::is_same_v<T, long long>) {
          return std::to_string(v);
        } else if constexpr (std::is_same_v<T, bool>) {
          return v ? "true" : "false";
        } else {
          return v;
        }
      },
      c);
}

nlohmann::ordered_json to_json(const Cell& c) {
  return std::visit(
      [](const auto& v) -> nlohmann::ordered_json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) {
          if (!std::isfinite(v)) return nullptr;
        }
        return v;
      },
      c);
}

void write_table_csv(const Table& t, std::ostream& out) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << csv_field(t.columns[i]);
  out << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_field(render(row[i]));
    out << '\n';
  }
}

nlohmann::ordered_json table_json(const Table& t) {
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) obj[t.columns[i]] = to_json(row[i]);
    rows.push_back(std::move(obj));
  }
  return rows;
}

}  // namespace

void Table::add(std::vector<Cell> row) {
  if (row.size() != columns.size()) throw std::logic_error("row width does not match table " + name);
  rows.push_back(std::move(row));
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void write_csv(const Report& report, std::ostream& out) {
  out << "# " << kUnitsNote << '\n';
  for (const auto& [key, value] : report.metadata) out << "# " << key << ": " << render(value) << '\n';
  write_table_csv(report.rows, out);
  for (const auto& t : report.extra) {
    out << "\n# table: " << t.name << '\n';
    write_table_csv(t, out);
  }
}

void write_json(const Report& report, std::ostream& out) {
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();
  meta["units"] = kUnitsNote;
  for (const auto& [key, value] : report.metadata) meta[key] = to_json(value);
  if (!report.extra.empty()) {
    nlohmann::ordered_json tables = nlohmann::ordered_json::object();
    for (const auto& t : report.extra) tables[t.name] = table_json(t);
    meta["tables"] = std::move(tables);
  }
  nlohmann::ordered_json doc = nlohmann::ordered_json::object();
  doc["metadata"] = std::move(meta);
  doc["rows"] = table_json(report.rows);
  out << doc.dump(2) << '\n';
}

}  // namespace vacuum::cli
