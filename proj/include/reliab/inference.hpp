#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "reliab/moments.hpp"

namespace reliab {

/// Group sizes of a two-sample design. `ratio()` is treatment over control.
class DesignContext {
 public:
  /// Throws a config error unless both sizes are at least 2.
  DesignContext(std::uint64_t n_control, std::uint64_t n_treatment);

  [[nodiscard]] std::uint64_t n_x() const noexcept { return n_x_; }
  [[nodiscard]] std::uint64_t n_y() const noexcept { return n_y_; }
  [[nodiscard]] std::uint64_t total() const noexcept { return n_x_ + n_y_; }
  [[nodiscard]] double ratio() const noexcept {
    return static_cast<double>(n_y_) / static_cast<double>(n_x_);
  }

 private:
  std::uint64_t n_x_;
  std::uint64_t n_y_;
};

enum class Decision { reject_right, reject_left, fail_to_reject };

std::string_view to_string(Decision d) noexcept;

/// Welch statistic (ybar - xbar) / sqrt(var_x/n_x + var_y/n_y), with
/// n-divisor variances. x is control, y is treatment.
double welch_statistic(const GroupSummary& x, const GroupSummary& y);

/// Two-sided normal-reference p-value 2 * (1 - Phi(|T|)).
double p_value_classic(double t);

/// Rejects iff p < alpha (strictly); the side follows the sign of T.
/// T == 0 never rejects.
Decision decide(double p, double alpha, double t);

void validate_alpha(double alpha);

struct TestResult {
  double statistic = 0.0;
  double p_classic = 1.0;
  std::optional<double> p_corrected;
  double alpha = 0.05;
  Decision classic_decision = Decision::fail_to_reject;
  std::optional<Decision> corrected_decision;
};

}  // namespace reliab
