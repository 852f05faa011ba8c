#pragma once

// Standard normal kernels: density, distribution function and quantile.
//
// Accuracy targets (checked by tests against an arbitrary-precision table):
//   cdf       absolute error <= 1e-12 on |x| <= 8
//   quantile  |cdf(quantile(p)) - p| <= 1e-9 on [1e-12, 1 - 1e-12]

namespace reliab::stdnorm {

inline constexpr double kInvSqrt2Pi = 0.398942280401432677939946059934;

/// Density (2*pi)^(-1/2) exp(-x^2/2). Throws a domain error for NaN/inf.
double pdf(double x);

/// Distribution function Phi(x). Throws a domain error for NaN/inf.
double cdf(double x);

/// Upper tail 1 - Phi(x), computed without cancellation.
double ccdf(double x);

/// Inverse of Phi on the open interval (0, 1).
double quantile(double p);

}  // namespace reliab::stdnorm
