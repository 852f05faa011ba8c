#include "reliab/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "reliab/error.hpp"

namespace reliab {

namespace {

using ojson = nlohmann::ordered_json;

std::string shortest(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string human(double v) {
  if (v == std::floor(v) && std::abs(v) < 1e15) return shortest(v);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

ojson cell_to_json(const Cell& c) {
  return std::visit(
      [](const auto& v) -> ojson {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return nullptr;
        } else if constexpr (std::is_same_v<T, double>) {
          // NaN/inf are not representable in JSON.
          if (!std::isfinite(v)) return nullptr;
          return v;
        } else {
          return v;
        }
      },
      c);
}

Cell cell_from_json(const ojson& j) {
  switch (j.type()) {
    case ojson::value_t::null:
      return std::monostate{};
    case ojson::value_t::boolean:
      return j.get<bool>();
    case ojson::value_t::number_integer:
    case ojson::value_t::number_unsigned:
      return j.get<std::int64_t>();
    case ojson::value_t::number_float:
      return j.get<double>();
    case ojson::value_t::string:
      return j.get<std::string>();
    default:
      throw data_error("report: unsupported cell type in JSON");
  }
}

std::string cell_text(const Cell& c, bool for_humans) {
  return std::visit(
      [&](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return for_humans ? "n/a" : "";
        } else if constexpr (std::is_same_v<T, bool>) {
          return v ? "true" : "false";
        } else if constexpr (std::is_same_v<T, std::int64_t>) {
          return std::to_string(v);
        } else if constexpr (std::is_same_v<T, double>) {
          return for_humans ? human(v) : shortest(v);
        } else {
          return v;
        }
      },
      c);
}

}  // namespace

void Section::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) {
    throw domain_error("report: row width does not match section '" + name + "'");
  }
  rows.push_back(std::move(row));
}

const Section* Report::section(const std::string& name) const {
  for (const auto& s : sections) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

OutputFormat parse_format(const std::string& s) {
  if (s == "table") return OutputFormat::table;
  if (s == "csv") return OutputFormat::csv;
  if (s == "json") return OutputFormat::json;
  throw config_error("unknown output format '" + s + "' (expected json, csv or table)");
}

nlohmann::ordered_json to_json(const Report& r) {
  ojson j;
  j["command"] = r.command;
  j["version"] = r.version;
  j["config"] = r.config;
  ojson sections = ojson::array();
  for (const auto& s : r.sections) {
    ojson js;
    js["name"] = s.name;
    js["columns"] = s.columns;
    ojson rows = ojson::array();
    for (const auto& row : s.rows) {
      ojson jr = ojson::array();
      for (const auto& c : row) jr.push_back(cell_to_json(c));
      rows.push_back(std::move(jr));
    }
    js["rows"] = std::move(rows);
    sections.push_back(std::move(js));
  }
  j["sections"] = std::move(sections);
  j["warnings"] = r.warnings;
  return j;
}

Report report_from_json(const nlohmann::ordered_json& j) {
  Report r;
  try {
    r.command = j.at("command").get<std::string>();
    r.version = j.at("version").get<std::string>();
    r.config = j.at("config");
    for (const auto& js : j.at("sections")) {
      Section s;
      s.name = js.at("name").get<std::string>();
      s.columns = js.at("columns").get<std::vector<std::string>>();
      for (const auto& jr : js.at("rows")) {
        std::vector<Cell> row;
        for (const auto& c : jr) row.push_back(cell_from_json(c));
        s.add_row(std::move(row));
      }
      r.sections.push_back(std::move(s));
    }
    r.warnings = j.at("warnings").get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception& e) {
    throw data_error(std::string("report: malformed JSON: ") + e.what());
  }
  return r;
}

void write_json(std::ostream& os, const Report& r) { os << to_json(r).dump(2) << '\n'; }

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void write_csv(std::ostream& os, const Report& r) {
  bool first = true;
  for (const auto& s : r.sections) {
    if (!first) os << "\r\n";
    first = false;
    for (std::size_t i = 0; i < s.columns.size(); ++i) {
      if (i) os << ',';
      os << csv_escape(s.columns[i]);
    }
    os << "\r\n";
    for (const auto& row : s.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) os << ',';
        os << csv_escape(cell_text(row[i], false));
      }
      os << "\r\n";
    }
  }
}

void write_table(std::ostream& os, const Report& r) {
  bool first = true;
  for (const auto& s : r.sections) {
    if (!first) os << '\n';
    first = false;
    os << "== " << s.name << " ==\n";
    std::vector<std::vector<std::string>> text;
    std::vector<std::size_t> width(s.columns.size());
    for (std::size_t i = 0; i < s.columns.size(); ++i) width[i] = s.columns[i].size();
    for (const auto& row : s.rows) {
      auto& t = text.emplace_back();
      for (std::size_t i = 0; i < row.size(); ++i) {
        t.push_back(cell_text(row[i], true));
        width[i] = std::max(width[i], t.back().size());
      }
    }
    auto emit = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) os << "  ";
        os << cells[i] << std::string(width[i] - cells[i].size(), ' ');
      }
      os << '\n';
    };
    emit(s.columns);
    for (const auto& t : text) emit(t);
  }
}

void write_report(std::ostream& os, const Report& r, OutputFormat fmt) {
  switch (fmt) {
    case OutputFormat::json:
      write_json(os, r);
      break;
    case OutputFormat::csv:
      write_csv(os, r);
      break;
    case OutputFormat::table:
      write_table(os, r);
      break;
  }
}

}  // namespace reliab
