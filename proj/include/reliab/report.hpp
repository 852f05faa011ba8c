#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace reliab {

/// One table cell. monostate renders as null / empty / "n/a".
using Cell = std::variant<std::monostate, bool, std::int64_t, double, std::string>;

struct Section {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);

  bool operator==(const Section&) const = default;
};

/// Everything a command produces. `config` echoes the fully resolved
/// configuration (seed included) so any output can be replayed.
struct Report {
  std::string command;
  std::string version;
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
  std::vector<Section> sections;
  std::vector<std::string> warnings;

  [[nodiscard]] const Section* section(const std::string& name) const;

  bool operator==(const Report&) const = default;
};

enum class OutputFormat { table, csv, json };

OutputFormat parse_format(const std::string& s);

nlohmann::ordered_json to_json(const Report& r);
Report report_from_json(const nlohmann::ordered_json& j);

/// Single JSON document with stable key order.
void write_json(std::ostream& os, const Report& r);
/// One CSV block per section (header row first), blocks separated by a
/// blank line. Fields are quoted per RFC 4180 when needed.
void write_csv(std::ostream& os, const Report& r);
/// Aligned plain-text tables for humans.
void write_table(std::ostream& os, const Report& r);

void write_report(std::ostream& os, const Report& r, OutputFormat fmt);

std::string csv_escape(const std::string& field);

}  // namespace reliab
