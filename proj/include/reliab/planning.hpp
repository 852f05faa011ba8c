#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "reliab/moments.hpp"

namespace reliab {

/// Inputs to the sample-size thresholds. Cumulants may be population
/// values, plug-in estimates or stored priors; the formulas do not care.
struct PlanningInputs {
  double alpha = 0.05;
  double epsilon = 0.01;
  double k = 1.0;  // treatment / control
  Cumulants x;     // control
  Cumulants y;     // treatment

  /// Throws a config error for out-of-range levels, ratios, variances, or
  /// cumulants violating kurtosis >= skewness^2 + 1.
  void validate() const;
  /// Non-fatal issues, e.g. epsilon >= alpha/2.
  [[nodiscard]] std::vector<std::string> warnings() const;
};

struct PlanningCoefficients {
  double a1 = 0.0;
  double a2 = 0.0;
};

/// Predicted per-tail deviations alpha_tail - alpha/2 at total size N.
/// first_*: +-a1/sqrt(N); second_*: +-a1/sqrt(N) + a2/N.
struct TailDeviationPrediction {
  std::uint64_t n = 0;
  double first_left = 0.0;
  double first_right = 0.0;
  double second_left = 0.0;
  double second_right = 0.0;
};

struct SampleSizePlan {
  PlanningCoefficients coefficients;
  std::optional<std::uint64_t> n_min_first;  // empty when a1 == 0
  std::uint64_t n_min_second = 0;
  std::vector<TailDeviationPrediction> predictions;
  std::vector<std::string> warnings;
};

/// First-order coefficient
///   a1 = (2z^2+1) phi(z)/6 * sqrt((1+k)/k) (g_y s_y^3 - k^2 g_x s_x^3)
///        / (k s_x^2 + s_y^2)^{3/2},   z = z_{alpha/2}.
/// Only even powers of z appear, so the sign of z is immaterial here.
double coefficient_a1(const PlanningInputs& in);

/// Second-order coefficient a2, i.e. N * phi(z) q2(z) with q2's
/// N-dependence factored out. Evaluated at the LOWER quantile
/// z = z_{alpha/2} < 0; q2 is odd in z, so using z_{1-alpha/2} instead
/// would flip the sign of a2 (and of the second-order predictions).
double coefficient_a2(const PlanningInputs& in);

PlanningCoefficients coefficients(const PlanningInputs& in);

/// ceil((a1/epsilon)^2); empty when a1 == 0.
std::optional<std::uint64_t> n_min_first(double a1, double epsilon);

/// ceil(((|a1| + sqrt(a1^2 - 4|a2| eps sign(a1^2 - 4|a2| eps))) / (2 eps))^2)
/// with sign(0) = +1.
std::uint64_t n_min_second(double a1, double a2, double epsilon);

TailDeviationPrediction predicted_tail_deviation(std::uint64_t n,
                                                 const PlanningInputs& in);

SampleSizePlan make_plan(const PlanningInputs& in,
                         const std::vector<std::uint64_t>& query_sizes = {});

// ---------------------------------------------------------------------------
// Closed-form population moments of the synthetic families.

struct PopulationMoments {
  double mean = 0.0;
  double variance = 1.0;
  double skewness = 0.0;
  double kurtosis = 3.0;

  [[nodiscard]] Cumulants cumulants() const noexcept {
    return {variance, skewness, kurtosis};
  }
};

PopulationMoments normal_population_moments(double mu, double sigma);

/// LN(mu, sigma^2): w = exp(sigma^2), skewness (w+2) sqrt(w-1),
/// kurtosis w^4 + 2w^3 + 3w^2 - 3.
PopulationMoments lognormal_population_moments(double mu, double sigma);

PopulationMoments gamma_population_moments(double shape, double scale);

/// Mixture of a point mass at 0 (probability zero_prob) and LN(mu, sigma^2).
PopulationMoments zero_inflated_lognormal_population_moments(double zero_prob,
                                                             double mu,
                                                             double sigma);

struct ZeroInflatedLognormalShape {
  double zero_prob = 0.0;
  double sigma = 1.0;
};

/// Finds the zero-inflated lognormal shape with the requested skewness and
/// kurtosis (mu only scales, so it is left free). Throws a config error when
/// no such shape exists.
ZeroInflatedLognormalShape match_zero_inflated_lognormal(double skewness,
                                                         double kurtosis);

}  // namespace reliab
