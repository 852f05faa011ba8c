#include "reliab/planning.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "reliab/error.hpp"
#include "reliab/stdnorm.hpp"

namespace reliab {

namespace {

void check_group(const Cumulants& c, const char* name) {
  if (!(c.variance > 0.0) || !std::isfinite(c.variance)) {
    throw config_error(std::string("planning: ") + name +
                       " variance must be positive and finite");
  }
  if (!std::isfinite(c.skewness) || !std::isfinite(c.kurtosis)) {
    throw config_error(std::string("planning: ") + name +
                       " skewness/kurtosis must be finite");
  }
  // Pearson's bound; the slack absorbs rounding in published cumulants.
  if (c.kurtosis < c.skewness * c.skewness + 1.0 - 1e-9) {
    std::ostringstream os;
    os << "planning: " << name << " kurtosis " << c.kurtosis
       << " violates kurtosis >= skewness^2 + 1 = "
       << c.skewness * c.skewness + 1.0;
    throw config_error(os.str());
  }
}

// Skewness numerator g_y s_y^3 - k^2 g_x s_x^3 and the mixed variance.
struct Shape {
  double skew_num;
  double mix;
};

Shape shape(const PlanningInputs& in) {
  const double vx = in.x.variance;
  const double vy = in.y.variance;
  return {in.y.skewness * vy * std::sqrt(vy) -
              in.k * in.k * in.x.skewness * vx * std::sqrt(vx),
          in.k * vx + vy};
}

std::uint64_t ceil_count(double value) {
  if (!std::isfinite(value) || value > 9.0e18) {
    throw domain_error("planning: sample-size threshold overflows");
  }
  return static_cast<std::uint64_t>(std::ceil(value));
}

}  // namespace

void PlanningInputs::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw config_error("planning: alpha must lie in (0, 1)");
  }
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw config_error("planning: epsilon must be positive");
  }
  if (!(k > 0.0) || !std::isfinite(k)) {
    throw config_error("planning: allocation ratio k must be positive");
  }
  check_group(x, "control");
  check_group(y, "treatment");
}

std::vector<std::string> PlanningInputs::warnings() const {
  std::vector<std::string> out;
  if (epsilon >= alpha / 2.0) {
    std::ostringstream os;
    os << "epsilon " << epsilon << " is not below alpha/2 = " << alpha / 2.0
       << "; the per-tail tolerance exceeds the per-tail budget";
    out.push_back(os.str());
  }
  return out;
}

double coefficient_a1(const PlanningInputs& in) {
  const double z = stdnorm::quantile(in.alpha / 2.0);
  const Shape s = shape(in);
  return (2.0 * z * z + 1.0) * stdnorm::pdf(z) / 6.0 *
         std::sqrt((1.0 + in.k) / in.k) * s.skew_num /
         (s.mix * std::sqrt(s.mix));
}

double coefficient_a2(const PlanningInputs& in) {
  const double z = stdnorm::quantile(in.alpha / 2.0);  // lower quantile, < 0
  const double z3 = z * z * z;
  const double z5 = z3 * z * z;
  const double k = in.k;
  const double vx = in.x.variance;
  const double vy = in.y.variance;
  const Shape s = shape(in);
  const double mix2 = s.mix * s.mix;

  const double kurtosis_term =
      (1.0 + k) / (12.0 * k) *
      ((in.y.kurtosis - 3.0) * vy * vy + k * k * k * (in.x.kurtosis - 3.0) * vx * vx) /
      mix2 * (z3 - 3.0 * z);
  const double skewness_term = (1.0 + k) / (18.0 * k) * s.skew_num * s.skew_num /
                               (mix2 * s.mix) * (z5 + 2.0 * z3 - 3.0 * z);
  const double studentization_term =
      (1.0 + k) / 4.0 *
      ((k * k * k * vx * vx + vy * vy) * (z3 + 3.0 * z) +
       2.0 * k * (1.0 + k) * vx * vy * z) /
      (k * mix2);
  return stdnorm::pdf(z) * (kurtosis_term - skewness_term - studentization_term);
}

PlanningCoefficients coefficients(const PlanningInputs& in) {
  return {coefficient_a1(in), coefficient_a2(in)};
}

std::optional<std::uint64_t> n_min_first(double a1, double epsilon) {
  if (!(epsilon > 0.0)) {
    throw config_error("planning: epsilon must be positive");
  }
  if (a1 == 0.0) return std::nullopt;
  const double r = a1 / epsilon;
  return ceil_count(r * r);
}

std::uint64_t n_min_second(double a1, double a2, double epsilon) {
  if (!(epsilon > 0.0)) {
    throw config_error("planning: epsilon must be positive");
  }
  const double disc = a1 * a1 - 4.0 * std::abs(a2) * epsilon;
  const double sign = disc >= 0.0 ? 1.0 : -1.0;
  const double root =
      (std::abs(a1) + std::sqrt(a1 * a1 - 4.0 * std::abs(a2) * epsilon * sign)) /
      (2.0 * epsilon);
  return ceil_count(root * root);
}

TailDeviationPrediction predicted_tail_deviation(std::uint64_t n,
                                                 const PlanningInputs& in) {
  if (n < 4) {
    throw config_error("planning: prediction needs N >= 4");
  }
  const PlanningCoefficients c = coefficients(in);
  const double nd = static_cast<double>(n);
  const double first = c.a1 / std::sqrt(nd);
  const double second = c.a2 / nd;
  TailDeviationPrediction p;
  p.n = n;
  p.first_left = first;
  p.first_right = -first;
  p.second_left = first + second;
  p.second_right = -first + second;
  return p;
}

SampleSizePlan make_plan(const PlanningInputs& in,
                         const std::vector<std::uint64_t>& query_sizes) {
  in.validate();
  SampleSizePlan plan;
  plan.coefficients = coefficients(in);
  plan.n_min_first = n_min_first(plan.coefficients.a1, in.epsilon);
  plan.n_min_second =
      n_min_second(plan.coefficients.a1, plan.coefficients.a2, in.epsilon);
  for (std::uint64_t n : query_sizes) {
    plan.predictions.push_back(predicted_tail_deviation(n, in));
  }
  plan.warnings = in.warnings();
  return plan;
}

// ---------------------------------------------------------------------------

PopulationMoments normal_population_moments(double mu, double sigma) {
  if (!(sigma > 0.0)) throw domain_error("normal: sigma must be positive");
  return {mu, sigma * sigma, 0.0, 3.0};
}

PopulationMoments lognormal_population_moments(double mu, double sigma) {
  if (!(sigma > 0.0)) throw domain_error("lognormal: sigma must be positive");
  const double s2 = sigma * sigma;
  const double wm1 = std::expm1(s2);  // w - 1, accurate for small sigma
  const double w = wm1 + 1.0;
  PopulationMoments m;
  m.mean = std::exp(mu + 0.5 * s2);
  m.variance = wm1 * std::exp(2.0 * mu + s2);
  m.skewness = (w + 2.0) * std::sqrt(wm1);
  // w^4 + 2w^3 + 3w^2 - 3 - 3 written in powers of (w-1) to avoid
  // cancellation near w = 1.
  const double u = wm1;
  m.kurtosis = 3.0 + u * (16.0 + u * (15.0 + u * (6.0 + u)));
  return m;
}

PopulationMoments gamma_population_moments(double shape, double scale) {
  if (!(shape > 0.0) || !(scale > 0.0)) {
    throw domain_error("gamma: shape and scale must be positive");
  }
  return {shape * scale, shape * scale * scale, 2.0 / std::sqrt(shape),
          3.0 + 6.0 / shape};
}

PopulationMoments zero_inflated_lognormal_population_moments(double zero_prob,
                                                             double mu,
                                                             double sigma) {
  if (!(zero_prob >= 0.0 && zero_prob < 1.0)) {
    throw domain_error("zero-inflated lognormal: zero_prob must lie in [0, 1)");
  }
  if (!(sigma > 0.0)) {
    throw domain_error("zero-inflated lognormal: sigma must be positive");
  }
  const double q = 1.0 - zero_prob;
  const double s2 = sigma * sigma;
  // Raw moments E[X^j] = q exp(j mu + j^2 s2 / 2), taken with mu = 0 and
  // rescaled afterwards (skewness and kurtosis are scale-free).
  const double m1 = q * std::exp(0.5 * s2);
  const double m2 = q * std::exp(2.0 * s2);
  const double m3 = q * std::exp(4.5 * s2);
  const double m4 = q * std::exp(8.0 * s2);
  const double var = m2 - m1 * m1;
  const double c3 = m3 - 3.0 * m1 * m2 + 2.0 * m1 * m1 * m1;
  const double c4 = m4 - 4.0 * m1 * m3 + 6.0 * m1 * m1 * m2 - 3.0 * m1 * m1 * m1 * m1;
  const double scale = std::exp(mu);
  return {m1 * scale, var * scale * scale, c3 / (var * std::sqrt(var)),
          c4 / (var * var)};
}

ZeroInflatedLognormalShape match_zero_inflated_lognormal(double skewness,
                                                         double kurtosis) {
  if (!(skewness > 0.0) || !std::isfinite(skewness) || !std::isfinite(kurtosis)) {
    throw config_error("zero-inflated lognormal match needs finite positive skewness");
  }
  if (!(kurtosis > skewness * skewness + 1.0)) {
    throw config_error("zero-inflated lognormal match needs kurtosis > skewness^2 + 1");
  }

  // For fixed sigma, skewness falls monotonically as the non-zero mass q
  // grows; solve for q on a log scale.
  auto q_for_sigma = [&](double sigma) {
    double lo = std::log(1e-12);
    double hi = 0.0;
    for (int i = 0; i < 200; ++i) {
      const double mid = 0.5 * (lo + hi);
      const double g =
          zero_inflated_lognormal_population_moments(1.0 - std::exp(mid), 0.0, sigma)
              .skewness;
      (g > skewness ? lo : hi) = mid;
    }
    return std::exp(0.5 * (lo + hi));
  };

  // Upper end of the sigma range: plain lognormal with the target skewness.
  double sig_lo = 1e-3;
  double sig_hi = 0.0;
  {
    double lo = 1e-6;
    double hi = 10.0;
    for (int i = 0; i < 200; ++i) {
      const double mid = 0.5 * (lo + hi);
      (lognormal_population_moments(0.0, mid).skewness < skewness ? lo : hi) = mid;
    }
    sig_hi = lo;
  }
  if (!(sig_hi > sig_lo)) {
    throw config_error("zero-inflated lognormal match: skewness too small");
  }
  // Along the constant-skewness curve, kurtosis rises with sigma from the
  // two-point bound towards the plain lognormal value.
  auto kurt_at = [&](double sigma) {
    const double q = q_for_sigma(sigma);
    return zero_inflated_lognormal_population_moments(1.0 - q, 0.0, sigma).kurtosis;
  };
  if (kurtosis < kurt_at(sig_lo) || kurtosis > kurt_at(sig_hi)) {
    throw config_error(
        "zero-inflated lognormal match: kurtosis outside the attainable range");
  }
  for (int i = 0; i < 200 && sig_hi - sig_lo > 1e-15; ++i) {
    const double mid = 0.5 * (sig_lo + sig_hi);
    (kurt_at(mid) < kurtosis ? sig_lo : sig_hi) = mid;
  }
  const double sigma = 0.5 * (sig_lo + sig_hi);
  return {1.0 - q_for_sigma(sigma), sigma};
}

}  // namespace reliab
