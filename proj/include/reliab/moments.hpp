#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

namespace reliab {

/// Variance, skewness and kurtosis of one group, either estimated from data
/// or supplied as population values (planning mode).
struct Cumulants {
  double variance = 1.0;
  double skewness = 0.0;
  double kurtosis = 3.0;
};

/// Per-group plug-in estimates. Variance uses divisor n; skewness and
/// kurtosis carry no small-sample bias correction.
struct GroupSummary {
  std::uint64_t n = 0;
  double mean = 0.0;
  double variance = 0.0;
  double skewness = 0.0;
  double kurtosis = 0.0;

  [[nodiscard]] Cumulants cumulants() const noexcept {
    return {variance, skewness, kurtosis};
  }
};

/// Streaming accumulator of the count, mean and central power sums
/// M2..M4. Uses the one-pass update and pairwise merge recurrences
/// (Welford / Terriberry / Pebay), so no raw power sums are ever formed.
class MomentAccumulator {
 public:
  MomentAccumulator() = default;

  /// Adds one observation. Throws a data error for NaN/inf.
  void add(double x);

  void add(std::span<const double> xs) {
    for (double x : xs) add(x);
  }

  /// Folds `other` into this accumulator.
  void merge(const MomentAccumulator& other) noexcept;

  /// Plug-in summary. Requires n >= 2 and a non-zero spread.
  [[nodiscard]] GroupSummary finalize() const;

  [[nodiscard]] std::uint64_t count() const noexcept { return n_; }
  [[nodiscard]] double mean() const noexcept { return mean_; }
  [[nodiscard]] double m2() const noexcept { return m2_; }
  [[nodiscard]] double m3() const noexcept { return m3_; }
  [[nodiscard]] double m4() const noexcept { return m4_; }

 private:
  std::uint64_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
  double m3_ = 0.0;
  double m4_ = 0.0;
};

[[nodiscard]] inline MomentAccumulator merge(MomentAccumulator a,
                                             const MomentAccumulator& b) {
  a.merge(b);
  return a;
}

/// Convenience: accumulate a whole sample and finalize it.
[[nodiscard]] GroupSummary summarize(std::span<const double> xs);

}  // namespace reliab
