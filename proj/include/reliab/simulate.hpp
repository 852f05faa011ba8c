#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "reliab/planning.hpp"

namespace reliab {

// ---------------------------------------------------------------------------
// Distribution families

struct NormalFamily {
  double mu = 0.0;
  double sigma = 1.0;
};
struct LognormalFamily {
  double mu = 0.0;
  double sigma = 1.0;
};
struct GammaFamily {
  double shape = 1.0;
  double scale = 1.0;
};
/// Point mass at zero mixed with LN(mu, sigma^2); a two-shape-parameter
/// stand-in for engagement metrics where most users record zero.
struct ZeroInflatedLognormalFamily {
  double zero_prob = 0.0;
  double mu = 0.0;
  double sigma = 1.0;
};
/// Resampling with replacement from an observed dataset.
struct EmpiricalFamily {
  std::shared_ptr<const std::vector<double>> values;
  std::string source;
};

using DistributionSpec = std::variant<NormalFamily, LognormalFamily, GammaFamily,
                                      ZeroInflatedLognormalFamily, EmpiricalFamily>;

/// Throws a config error for non-positive scale parameters or an empty
/// dataset. `require_spread` additionally rejects constant datasets.
void validate(const DistributionSpec& spec, bool require_spread = true);

/// "family:p1,p2" form, e.g. "lognormal:0,1".
std::string describe(const DistributionSpec& spec);

/// Population moments (for empirical data: the dataset's own plug-in moments).
PopulationMoments population_moments(const DistributionSpec& spec);

// ---------------------------------------------------------------------------
// Random streams

using Engine = std::mt19937_64;

/// Engine for an independent substream, a pure function of the root seed and
/// up to three indices. Results therefore never depend on thread scheduling.
Engine substream(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0,
                 std::uint64_t c = 0);

/// n i.i.d. draws.
std::vector<double> sample_group(const DistributionSpec& spec, std::uint64_t n,
                                 Engine& engine);

// ---------------------------------------------------------------------------
// Replications

enum class Method { classic, corrected };

std::string_view to_string(Method m) noexcept;

/// Splits a total N into (n_x, n_y) with n_x = round(N / (1+k)).
std::pair<std::uint64_t, std::uint64_t> split_sizes(std::uint64_t n, double k);

struct ReplicationOutcome {
  double statistic = 0.0;
  double p_classic = 1.0;
  double p_corrected = 1.0;
  std::uint32_t redraws = 0;  // degenerate draws discarded before success
};

/// One null replication on substream `stream` of `seed`. A draw whose group
/// has zero variance is discarded and redrawn from the next attempt index.
ReplicationOutcome run_replication(const DistributionSpec& spec,
                                   std::uint64_t n_x, std::uint64_t n_y,
                                   std::uint64_t seed, std::uint64_t stream);

struct SimulationConfig {
  double alpha = 0.05;
  double epsilon = 0.01;
  double k = 1.0;
  std::uint64_t replications = 10000;
  std::uint64_t seed = 1;
  std::vector<std::uint64_t> sizes;  // total N per row
  std::vector<Method> methods{Method::classic, Method::corrected};
  unsigned threads = 0;  // 0: hardware concurrency

  void validate() const;
};

struct TailErrorRow {
  Method method = Method::classic;
  std::uint64_t n = 0;
  std::uint64_t n_x = 0;
  std::uint64_t n_y = 0;
  std::uint64_t rejections_left = 0;
  std::uint64_t rejections_right = 0;
  double alpha_hat_left = 0.0;
  double alpha_hat_right = 0.0;
  double se_left = 0.0;
  double se_right = 0.0;
  double dev_left = 0.0;   // alpha_hat_left - alpha/2
  double dev_right = 0.0;  // alpha_hat_right - alpha/2
  double total_dev = 0.0;  // |alpha_hat_left + alpha_hat_right - alpha|
  bool pass = false;       // max(|dev_left|, |dev_right|) <= epsilon

  [[nodiscard]] double max_abs_dev() const noexcept;
};

struct SizeDiagnostics {
  std::uint64_t n = 0;
  std::uint64_t redraws = 0;
  std::uint64_t disagreements = 0;  // replications where the methods' decisions differ
};

struct TailErrorReport {
  double alpha = 0.05;
  double epsilon = 0.01;
  std::uint64_t replications = 0;
  std::vector<TailErrorRow> rows;  // ordered by size, then method
  std::vector<SizeDiagnostics> diagnostics;

  [[nodiscard]] const TailErrorRow* find(Method m, std::uint64_t n) const noexcept;
};

/// Per-tail rejection rates alpha_hat = B^-1 sum I(p < alpha, sign of T),
/// binomial standard errors sqrt(a(1-a)/B).
TailErrorReport estimate_tail_errors(const SimulationConfig& config,
                                     const DistributionSpec& spec);

/// Re-evaluates pass flags of an existing report at another tolerance.
TailErrorReport with_tolerance(TailErrorReport report, double epsilon);

/// Seven sizes geometrically spaced over [n_center/5, 5 n_center]. With a
/// ratio k whose 1+k is integral, sizes are rounded to multiples of 1+k
/// (so n_y = k n_x exactly) and kept >= 2(1+k); otherwise to integers.
std::vector<std::uint64_t> auto_grid(std::uint64_t n_center,
                                     std::optional<double> k = std::nullopt);

/// Smallest size in the report whose row for `method` passes.
std::optional<std::uint64_t> sweep_min_n(const TailErrorReport& report,
                                         Method method);

std::optional<std::uint64_t> sweep_min_n(const SimulationConfig& config,
                                         const DistributionSpec& spec,
                                         Method method);

/// The B Welch statistics at total size n, in replication order (the same
/// substreams estimate_tail_errors uses for that size).
std::vector<double> collect_statistics(const SimulationConfig& config,
                                       const DistributionSpec& spec,
                                       std::uint64_t n);

struct Histogram {
  std::vector<double> edges;           // bins + 1
  std::vector<double> density;         // empirical density per bin
  std::vector<double> normal_density;  // N(0,1) density at bin centers
};

Histogram density_histogram(const std::vector<double>& values, std::size_t bins,
                            double lo, double hi);

}  // namespace reliab
