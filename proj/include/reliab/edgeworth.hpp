#pragma once

#include "reliab/inference.hpp"
#include "reliab/moments.hpp"

namespace reliab {

/// Skewness and kurtosis of the mean difference D = Ybar - Xbar.
struct DifferenceCumulants {
  double gamma_d = 0.0;
  double tau_d = 3.0;
};

/// Exact skewness/kurtosis of D for i.i.d. groups with the given per-group
/// cumulants and sizes (k = n_y / n_x, N = n_x + n_y):
///
///   gamma_D = sqrt(1+k)/sqrt(N k) * (g_y s_y^3 - k^2 g_x s_x^3)
///             / (k s_x^2 + s_y^2)^{3/2}
///   tau_D   = 3 + (1+k)/(k N) * ((t_y-3) s_y^4 + k^3 (t_x-3) s_x^4)
///             / (s_y^2 + k s_x^2)^2
DifferenceCumulants difference_cumulants(const Cumulants& x, const Cumulants& y,
                                         const DesignContext& design);

/// Two-term Edgeworth expansion of the Welch statistic's distribution,
/// G(z) = Phi(z) + phi(z) (q1(z) + q2(z)), built from per-group cumulants.
/// With sample estimates plugged in this is the plug-in G-hat.
class EdgeworthExpansion {
 public:
  EdgeworthExpansion(const Cumulants& x, const Cumulants& y,
                     const DesignContext& design);

  [[nodiscard]] const DifferenceCumulants& cumulants() const noexcept {
    return cum_;
  }

  /// (gamma_D / 6)(2z^2 + 1)
  [[nodiscard]] double q1(double z) const noexcept;
  /// (tau_D-3)/12 (z^3-3z) - gamma_D^2/18 (z^5+2z^3-3z) - variance term
  [[nodiscard]] double q2(double z) const noexcept;

  /// Untruncated G(z); may leave [0, 1] and is not forced monotone.
  [[nodiscard]] double cdf(double z) const;
  /// G(z) clamped to [0, 1].
  [[nodiscard]] double cdf_truncated(double z) const;
  /// 2 min{G_tr(T), 1 - G_tr(T)}.
  [[nodiscard]] double p_value(double t) const;

 private:
  DifferenceCumulants cum_;
  // Coefficients of the studentization term
  // -(1+k)/(4N) [(k^3 s_x^4 + s_y^4)(z^3 + 3z) + 2k(1+k) s_x^2 s_y^2 z]
  //   / [k (k s_x^2 + s_y^2)^2]  ==  -(c3 (z^3 + 3z) + c1 z)
  double c3_ = 0.0;
  double c1_ = 0.0;
};

double q1(double z, const DifferenceCumulants& cum);

double q2(double z, const DifferenceCumulants& cum, double x_variance,
          double y_variance, const DesignContext& design);

double edgeworth_cdf(double z, const Cumulants& x, const Cumulants& y,
                     const DesignContext& design);

double edgeworth_cdf_truncated(double z, const Cumulants& x, const Cumulants& y,
                               const DesignContext& design);

/// Edgeworth-corrected two-sided p-value for the Welch statistic `t` of the
/// samples summarized by x (control) and y (treatment).
double p_value_corrected(double t, const GroupSummary& x, const GroupSummary& y);

/// Full pipeline: Welch statistic, both p-values and both decisions.
TestResult two_sample_test(const GroupSummary& x, const GroupSummary& y,
                           double alpha);

}  // namespace reliab
