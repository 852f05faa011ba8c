#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "reliab/error.hpp"
#include "reliab/stdnorm.hpp"

namespace sn = reliab::stdnorm;

// Reference values: tests/oracles/stdnorm_oracle.py (mpmath, 40 digits).

TEST(Stdnorm, DensityValues) {
  EXPECT_DOUBLE_EQ(sn::pdf(0.0), 0.39894228040143267);
  EXPECT_EQ(sn::pdf(1.0), sn::pdf(-1.0));
  EXPECT_NEAR(sn::pdf(2.0), 0.05399096651318806, 1e-17);
  EXPECT_NEAR(sn::pdf(-3.5), 0.0008726826950457600656, 1e-18);
  EXPECT_NEAR(sn::pdf(8.0), 5.052271083536892288e-15, 1e-28);
}

TEST(Stdnorm, CdfValues) {
  EXPECT_EQ(sn::cdf(0.0), 0.5);
  EXPECT_NEAR(sn::cdf(1.0), 0.84134474606854294859, 1e-15);
  EXPECT_NEAR(sn::cdf(2.0), 0.9772498680518207928, 1e-15);
  EXPECT_NEAR(sn::cdf(-3.5), 0.00023262907903552503635, 1e-18);
  EXPECT_NEAR(sn::cdf(5.0), 0.99999971334842812081, 1e-15);
  EXPECT_NEAR(sn::cdf(8.0), 0.9999999999999993779, 1e-15);
  EXPECT_NEAR(sn::cdf(1.959963985), 0.975, 1e-9);
}

TEST(Stdnorm, Reflection) {
  for (double x = -8.0; x <= 8.0; x += 0.01) {
    EXPECT_NEAR(sn::cdf(-x) + sn::cdf(x), 1.0, 1e-13) << x;
  }
}

TEST(Stdnorm, MonotoneAndNonNegative) {
  double prev = sn::cdf(-9.0);
  for (double x = -8.99; x <= 8.0; x += 0.01) {
    const double c = sn::cdf(x);
    // Above x = 7 the spacing of doubles near 1 exceeds the increments.
    if (x < 7.0) {
      EXPECT_GT(c, prev) << x;
    } else {
      EXPECT_GE(c, prev) << x;
    }
    EXPECT_GE(sn::pdf(x), 0.0);
    prev = c;
  }
}

TEST(Stdnorm, QuantileValues) {
  EXPECT_EQ(sn::quantile(0.5), 0.0);
  EXPECT_NEAR(sn::quantile(0.025), -sn::quantile(0.975), 1e-15);
  EXPECT_NEAR(sn::quantile(0.975), 1.9599639845400542355, 1e-12);
  EXPECT_NEAR(sn::quantile(0.95), 1.6448536269514727149, 1e-12);
  EXPECT_NEAR(sn::quantile(1e-12), -7.0344838253011319298, 1e-9);
  EXPECT_NEAR(sn::quantile(0.999999), 4.7534243088228989482, 1e-10);
}

TEST(Stdnorm, QuantileRoundTrip) {
  for (int e = -12; e <= -1; ++e) {
    const double p = std::pow(10.0, e);
    EXPECT_NEAR(sn::cdf(sn::quantile(p)), p, 1e-9 * std::max(p, 1e-3)) << p;
    EXPECT_NEAR(sn::cdf(sn::quantile(1.0 - p)), 1.0 - p, 1e-9) << p;
  }
  for (int i = 1; i < 10000; ++i) {
    const double p = i / 10000.0;
    EXPECT_NEAR(sn::cdf(sn::quantile(p)), p, 1e-9) << p;
  }
}

TEST(Stdnorm, DomainErrors) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double inf = std::numeric_limits<double>::infinity();
  EXPECT_THROW((void)sn::pdf(nan), reliab::Error);
  EXPECT_THROW((void)sn::cdf(inf), reliab::Error);
  EXPECT_THROW((void)sn::quantile(0.0), reliab::Error);
  EXPECT_THROW((void)sn::quantile(1.0), reliab::Error);
  EXPECT_THROW((void)sn::quantile(nan), reliab::Error);
  try {
    (void)sn::quantile(2.0);
  } catch (const reliab::Error& e) {
    EXPECT_EQ(e.kind(), reliab::ErrorKind::domain);
  }
}
