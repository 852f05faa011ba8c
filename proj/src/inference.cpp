#include "reliab/inference.hpp"

#include <cmath>
#include <string>

#include "reliab/error.hpp"
#include "reliab/stdnorm.hpp"

namespace reliab {

DesignContext::DesignContext(std::uint64_t n_control, std::uint64_t n_treatment)
    : n_x_(n_control), n_y_(n_treatment) {
  if (n_x_ < 2 || n_y_ < 2) {
    throw config_error("design: each group needs at least 2 observations (got " +
                       std::to_string(n_x_) + " and " + std::to_string(n_y_) +
                       ")");
  }
}

std::string_view to_string(Decision d) noexcept {
  switch (d) {
    case Decision::reject_right:
      return "reject-right";
    case Decision::reject_left:
      return "reject-left";
    case Decision::fail_to_reject:
      return "fail-to-reject";
  }
  return "fail-to-reject";
}

double welch_statistic(const GroupSummary& x, const GroupSummary& y) {
  if (x.n == 0 || y.n == 0) {
    throw data_error("welch: empty group");
  }
  const double se2 = x.variance / static_cast<double>(x.n) +
                     y.variance / static_cast<double>(y.n);
  if (!(se2 > 0.0) || !std::isfinite(se2)) {
    throw data_error("welch: pooled standard error is zero");
  }
  return (y.mean - x.mean) / std::sqrt(se2);
}

double p_value_classic(double t) {
  // 2 * (1 - Phi(|T|)) evaluated through the upper tail directly.
  return 2.0 * stdnorm::ccdf(std::abs(t));
}

void validate_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw config_error("alpha must lie in (0, 1)");
  }
}

Decision decide(double p, double alpha, double t) {
  validate_alpha(alpha);
  if (!(p < alpha) || t == 0.0) return Decision::fail_to_reject;
  return t > 0.0 ? Decision::reject_right : Decision::reject_left;
}

}  // namespace reliab
