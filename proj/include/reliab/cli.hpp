#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "reliab/report.hpp"
#include "reliab/simulate.hpp"

namespace reliab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitData = 3;
inline constexpr int kExitNumeric = 4;

/// Parses "family:params". Families: normal:mu,sigma  lognormal:mu,sigma
/// gamma:shape,scale  zilognormal:zero_prob,mu,sigma  empirical:path
/// matched:skewness,kurtosis (zero-inflated lognormal with those cumulants).
DistributionSpec parse_distribution(const std::string& text);

struct SeedChoice {
  std::uint64_t seed = 1;
  std::string source;  // "flag", "env" or "default"
};

/// Flag wins over the RELIAB_SEED environment variable, which wins over 1.
SeedChoice resolve_seed(std::optional<std::uint64_t> flag);

struct AnalyzeOptions {
  std::optional<std::filesystem::path> control;
  std::optional<std::filesystem::path> treatment;
  std::optional<std::filesystem::path> data;  // two-column group,value file
  double alpha = 0.05;
  double epsilon = 0.01;
};

struct PlanOptions {
  std::optional<std::string> dist;
  std::optional<double> gamma;  // both groups
  std::optional<double> tau;    // both groups
  bool equal_variance = false;
  std::optional<double> sigma_x, gamma_x, tau_x;
  std::optional<double> sigma_y, gamma_y, tau_y;
  bool from_data = false;
  std::optional<std::filesystem::path> control;
  std::optional<std::filesystem::path> treatment;
  std::optional<std::filesystem::path> data;
  std::optional<double> k;  // default 1, or the data's own ratio
  double alpha = 0.05;
  double epsilon = 0.01;
  std::vector<std::uint64_t> at;
};

struct SimulateOptions {
  std::string dist = "lognormal:0,1";
  double k = 1.0;
  double alpha = 0.05;
  double epsilon = 0.01;
  std::uint64_t replications = 10000;
  std::optional<std::uint64_t> seed;
  std::vector<std::uint64_t> grid;  // empty: automatic around N_min^(2)
  std::vector<std::string> methods{"classic", "corrected"};
  std::optional<std::filesystem::path> emit_density;
  std::optional<std::uint64_t> density_n;  // default: first grid size
  std::size_t density_bins = 80;
  unsigned threads = 0;
};

struct SweepOptions {
  std::string dist = "lognormal:0,1";
  double k = 1.0;
  double alpha = 0.05;
  std::vector<double> epsilons{0.01};
  std::uint64_t replications = 10000;
  std::optional<std::uint64_t> seed;
  std::vector<std::uint64_t> grid;  // empty: union of automatic grids
  std::vector<std::string> methods{"classic", "corrected"};
  unsigned threads = 0;
};

Report cmd_analyze(const AnalyzeOptions& opt);
Report cmd_plan(const PlanOptions& opt);
Report cmd_simulate(const SimulateOptions& opt);
Report cmd_sweep(const SweepOptions& opt);

/// Full command-line entry point. Results go to `out`, warnings and errors
/// to `err`. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace reliab::cli
