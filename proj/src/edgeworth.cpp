#include "reliab/edgeworth.hpp"

#include <algorithm>
#include <cmath>

#include "reliab/error.hpp"
#include "reliab/stdnorm.hpp"

namespace reliab {

namespace {

void check_cumulants(const Cumulants& c, const char* group) {
  if (!(c.variance > 0.0) || !std::isfinite(c.variance)) {
    throw data_error(std::string("edgeworth: group ") + group +
                     " has zero or non-finite variance");
  }
  if (!std::isfinite(c.skewness) || !std::isfinite(c.kurtosis)) {
    throw data_error(std::string("edgeworth: group ") + group +
                     " has non-finite skewness or kurtosis");
  }
}

}  // namespace

DifferenceCumulants difference_cumulants(const Cumulants& x, const Cumulants& y,
                                         const DesignContext& design) {
  check_cumulants(x, "x");
  check_cumulants(y, "y");
  const double k = design.ratio();
  const double n = static_cast<double>(design.total());
  const double vx = x.variance;
  const double vy = y.variance;
  const double sx3 = vx * std::sqrt(vx);
  const double sy3 = vy * std::sqrt(vy);
  const double mix = k * vx + vy;

  DifferenceCumulants d;
  d.gamma_d = std::sqrt(1.0 + k) / std::sqrt(n * k) *
              (y.skewness * sy3 - k * k * x.skewness * sx3) /
              (mix * std::sqrt(mix));
  d.tau_d = 3.0 + (1.0 + k) / (k * n) *
                      ((y.kurtosis - 3.0) * vy * vy +
                       k * k * k * (x.kurtosis - 3.0) * vx * vx) /
                      (mix * mix);
  return d;
}

EdgeworthExpansion::EdgeworthExpansion(const Cumulants& x, const Cumulants& y,
                                       const DesignContext& design)
    : cum_(difference_cumulants(x, y, design)) {
  const double k = design.ratio();
  const double n = static_cast<double>(design.total());
  const double vx = x.variance;
  const double vy = y.variance;
  const double mix = k * vx + vy;
  const double scale = (1.0 + k) / (4.0 * n) / (k * mix * mix);
  c3_ = scale * (k * k * k * vx * vx + vy * vy);
  c1_ = scale * 2.0 * k * (1.0 + k) * vx * vy;
}

double EdgeworthExpansion::q1(double z) const noexcept {
  return cum_.gamma_d / 6.0 * (2.0 * z * z + 1.0);
}

double EdgeworthExpansion::q2(double z) const noexcept {
  const double z2 = z * z;
  const double z3 = z2 * z;
  const double z5 = z3 * z2;
  return (cum_.tau_d - 3.0) / 12.0 * (z3 - 3.0 * z) -
         cum_.gamma_d * cum_.gamma_d / 18.0 * (z5 + 2.0 * z3 - 3.0 * z) -
         (c3_ * (z3 + 3.0 * z) + c1_ * z);
}

double EdgeworthExpansion::cdf(double z) const {
  return stdnorm::cdf(z) + stdnorm::pdf(z) * (q1(z) + q2(z));
}

double EdgeworthExpansion::cdf_truncated(double z) const {
  return std::clamp(cdf(z), 0.0, 1.0);
}

double EdgeworthExpansion::p_value(double t) const {
  const double g = cdf_truncated(t);
  return std::min(1.0, 2.0 * std::min(g, 1.0 - g));
}

double q1(double z, const DifferenceCumulants& cum) {
  return cum.gamma_d / 6.0 * (2.0 * z * z + 1.0);
}

double q2(double z, const DifferenceCumulants& cum, double x_variance,
          double y_variance, const DesignContext& design) {
  const double k = design.ratio();
  const double n = static_cast<double>(design.total());
  const double mix = k * x_variance + y_variance;
  const double z3 = z * z * z;
  const double z5 = z3 * z * z;
  const double studentization =
      (1.0 + k) / (4.0 * n) *
      ((k * k * k * x_variance * x_variance + y_variance * y_variance) *
           (z3 + 3.0 * z) +
       2.0 * k * (1.0 + k) * x_variance * y_variance * z) /
      (k * mix * mix);
  return (cum.tau_d - 3.0) / 12.0 * (z3 - 3.0 * z) -
         cum.gamma_d * cum.gamma_d / 18.0 * (z5 + 2.0 * z3 - 3.0 * z) -
         studentization;
}

double edgeworth_cdf(double z, const Cumulants& x, const Cumulants& y,
                     const DesignContext& design) {
  return EdgeworthExpansion(x, y, design).cdf(z);
}

double edgeworth_cdf_truncated(double z, const Cumulants& x, const Cumulants& y,
                               const DesignContext& design) {
  return EdgeworthExpansion(x, y, design).cdf_truncated(z);
}

double p_value_corrected(double t, const GroupSummary& x,
                         const GroupSummary& y) {
  const DesignContext design(x.n, y.n);
  return EdgeworthExpansion(x.cumulants(), y.cumulants(), design).p_value(t);
}

TestResult two_sample_test(const GroupSummary& x, const GroupSummary& y,
                           double alpha) {
  validate_alpha(alpha);
  TestResult r;
  r.alpha = alpha;
  r.statistic = welch_statistic(x, y);
  r.p_classic = p_value_classic(r.statistic);
  r.classic_decision = decide(r.p_classic, alpha, r.statistic);
  r.p_corrected = p_value_corrected(r.statistic, x, y);
  r.corrected_decision = decide(*r.p_corrected, alpha, r.statistic);
  return r;
}

}  // namespace reliab
