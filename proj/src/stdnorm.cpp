#include "reliab/stdnorm.hpp"

#include <array>
#include <cmath>
#include <string>

#include "reliab/error.hpp"

namespace reliab::stdnorm {

namespace {

constexpr double kInvSqrt2 = 0.707106781186547524400844362105;

void require_finite(double x, const char* fn) {
  if (!std::isfinite(x)) {
    throw domain_error(std::string(fn) + ": argument must be finite");
  }
}

template <std::size_t N>
double horner(const std::array<double, N>& c, double r) {
  double acc = c[N - 1];
  for (std::size_t i = N - 1; i-- > 0;) acc = acc * r + c[i];
  return acc;
}

// Wichura, AS 241 (PPND16). Relative accuracy about 1e-16 before refinement.
double ppnd16(double p) {
  static constexpr std::array<double, 8> a{
      3.3871328727963666080e0, 1.3314166789178437745e2,
      1.9715909503065514427e3, 1.3731693765509461125e4,
      4.5921953931549871457e4, 6.7265770927008700853e4,
      3.3430575583588128105e4, 2.5090809287301226727e3};
  static constexpr std::array<double, 8> b{
      1.0,
      4.2313330701600911252e1, 6.8718700749205790830e2,
      5.3941960214247511077e3, 2.1213794301586595867e4,
      3.9307895800092710610e4, 2.8729085735721942674e4,
      5.2264952788528545610e3};
  static constexpr std::array<double, 8> c{
      1.42343711074968357734e0, 4.63033784615654529590e0,
      5.76949722146069140550e0, 3.64784832476320460504e0,
      1.27045825245236838258e0, 2.41780725177450611770e-1,
      2.27238449892691845833e-2, 7.74545014278341407640e-4};
  static constexpr std::array<double, 8> d{
      1.0,
      2.05319162663775882187e0, 1.67638483018380384940e0,
      6.89767334985100004550e-1, 1.48103976427480074590e-1,
      1.51986665636164571966e-2, 5.47593808499534494600e-4,
      1.05075007164441684324e-9};
  static constexpr std::array<double, 8> e{
      6.65790464350110377720e0, 5.46378491116411436990e0,
      1.78482653991729133580e0, 2.96560571828504891230e-1,
      2.65321895265761230930e-2, 1.24266094738807843860e-3,
      2.71155556874348757815e-5, 2.01033439929228813265e-7};
  static constexpr std::array<double, 8> f{
      1.0,
      5.99832206555887937690e-1, 1.36929880922735805310e-1,
      1.48753612908506148525e-2, 7.86869131145613259100e-4,
      1.84631831751005468180e-5, 1.42151175831644588870e-7,
      2.04426310338993978564e-15};

  const double q = p - 0.5;
  if (std::abs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    return q * horner(a, r) / horner(b, r);
  }
  double r = q < 0.0 ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double x;
  if (r <= 5.0) {
    r -= 1.6;
    x = horner(c, r) / horner(d, r);
  } else {
    r -= 5.0;
    x = horner(e, r) / horner(f, r);
  }
  return q < 0.0 ? -x : x;
}

}  // namespace

double pdf(double x) {
  require_finite(x, "stdnorm::pdf");
  return kInvSqrt2Pi * std::exp(-0.5 * x * x);
}

double cdf(double x) {
  require_finite(x, "stdnorm::cdf");
  return 0.5 * std::erfc(-x * kInvSqrt2);
}

double ccdf(double x) {
  require_finite(x, "stdnorm::ccdf");
  return 0.5 * std::erfc(x * kInvSqrt2);
}

double quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw domain_error("stdnorm::quantile: p must lie in (0, 1)");
  }
  double x = ppnd16(p);
  // One Newton step on whichever tail keeps the residual well conditioned.
  const double density = pdf(x);
  if (density > 0.0) {
    const double resid = p < 0.5 ? cdf(x) - p : (1.0 - p) - ccdf(x);
    x -= resid / density;
  }
  return x;
}

}  // namespace reliab::stdnorm
