#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace reliab {

struct IngestedDataset {
  std::vector<double> values;
  std::string source;

  [[nodiscard]] std::size_t count() const noexcept { return values.size(); }
};

struct GroupedDatasets {
  IngestedDataset control;
  IngestedDataset treatment;
};

/// One value per line; a non-numeric first line is treated as a header.
/// Blank lines are skipped. Throws a data error with the line number for
/// any other non-numeric or non-finite field, or when fewer than two values
/// remain.
IngestedDataset ingest_values(const std::filesystem::path& path);

/// Two columns `group,value`. Labels `control`/`treatment` are mapped by
/// name; any other pair of labels is taken in order of first appearance.
GroupedDatasets ingest_groups(const std::filesystem::path& path);

}  // namespace reliab
