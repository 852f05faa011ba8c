#include "reliab/ingest.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <string_view>

#include "reliab/error.hpp"

namespace reliab {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') {
    s = s.substr(1, s.size() - 2);
  }
  return s;
}

std::optional<double> parse_number(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

std::ifstream open(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw data_error("ingest: cannot open '" + path.string() + "'");
  return in;
}

[[noreturn]] void fail(const std::filesystem::path& path, std::size_t line,
                       const std::string& what) {
  throw data_error("ingest: " + path.string() + ":" + std::to_string(line) + ": " + what);
}

double checked_value(const std::filesystem::path& path, std::size_t line_no,
                     std::string_view field, bool& header_allowed) {
  const auto v = parse_number(field);
  if (!v) {
    fail(path, line_no, "not a number: '" + std::string(field) + "'");
  }
  if (!std::isfinite(*v)) fail(path, line_no, "value is not finite");
  header_allowed = false;
  return *v;
}

void require_two(const IngestedDataset& d, const std::string& what) {
  if (d.count() < 2) {
    throw data_error("ingest: " + what + " has fewer than 2 values");
  }
}

}  // namespace

IngestedDataset ingest_values(const std::filesystem::path& path) {
  std::ifstream in = open(path);
  IngestedDataset out;
  out.source = path.string();
  std::string line;
  std::size_t line_no = 0;
  bool header_allowed = true;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view field = trim(line);
    if (field.empty()) continue;
    if (header_allowed && !parse_number(field)) {
      header_allowed = false;
      continue;
    }
    out.values.push_back(checked_value(path, line_no, field, header_allowed));
  }
  require_two(out, "'" + path.string() + "'");
  return out;
}

GroupedDatasets ingest_groups(const std::filesystem::path& path) {
  std::ifstream in = open(path);
  std::vector<std::string> labels;
  std::vector<std::vector<double>> values;
  std::string line;
  std::size_t line_no = 0;
  bool header_allowed = true;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view raw = trim(line);
    if (raw.empty()) continue;
    const auto comma = raw.find(',');
    if (comma == std::string_view::npos) {
      fail(path, line_no, "expected two columns 'group,value'");
    }
    const std::string label(trim(raw.substr(0, comma)));
    const std::string_view field = trim(raw.substr(comma + 1));
    if (field.find(',') != std::string_view::npos) {
      fail(path, line_no, "expected exactly two columns");
    }
    if (header_allowed && !parse_number(field)) {
      header_allowed = false;
      continue;
    }
    const double v = checked_value(path, line_no, field, header_allowed);
    if (label.empty()) fail(path, line_no, "empty group label");
    std::size_t idx = 0;
    while (idx < labels.size() && labels[idx] != label) ++idx;
    if (idx == labels.size()) {
      if (labels.size() == 2) {
        fail(path, line_no, "third group label '" + label + "' (expected two groups)");
      }
      labels.push_back(label);
      values.emplace_back();
    }
    values[idx].push_back(v);
  }
  if (labels.size() != 2) {
    throw data_error("ingest: '" + path.string() + "' must contain exactly two groups");
  }
  std::size_t control = 0;
  if (labels[1] == "control" || labels[0] == "treatment") control = 1;
  GroupedDatasets out;
  out.control = {std::move(values[control]), path.string() + "#" + labels[control]};
  out.treatment = {std::move(values[1 - control]), path.string() + "#" + labels[1 - control]};
  require_two(out.control, "group '" + labels[control] + "'");
  require_two(out.treatment, "group '" + labels[1 - control] + "'");
  return out;
}

}  // namespace reliab
