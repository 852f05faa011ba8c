#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "reliab/error.hpp"
#include "reliab/moments.hpp"

using reliab::GroupSummary;
using reliab::MomentAccumulator;

namespace {

// Two-pass textbook oracle.
struct TwoPass {
  double mean = 0, m2 = 0, m3 = 0, m4 = 0;
  explicit TwoPass(const std::vector<double>& v) {
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    for (double x : v) {
      const double d = x - mean;
      m2 += d * d;
      m3 += d * d * d;
      m4 += d * d * d * d;
    }
  }
};

void expect_rel(double a, double b, double tol) {
  EXPECT_LE(std::abs(a - b), tol * std::max({std::abs(a), std::abs(b), 1e-300}))
      << a << " vs " << b;
}

void expect_same_summary(const GroupSummary& a, const GroupSummary& b, double tol) {
  EXPECT_EQ(a.n, b.n);
  expect_rel(a.mean, b.mean, tol);
  expect_rel(a.variance, b.variance, tol);
  expect_rel(a.skewness, b.skewness, tol);
  expect_rel(a.kurtosis, b.kurtosis, tol);
}

}  // namespace

TEST(Moments, SinglePoint) {
  MomentAccumulator acc;
  acc.add(5.0);
  EXPECT_EQ(acc.count(), 1u);
  EXPECT_EQ(acc.mean(), 5.0);
  EXPECT_EQ(acc.m2(), 0.0);
  EXPECT_EQ(acc.m3(), 0.0);
  EXPECT_EQ(acc.m4(), 0.0);
}

TEST(Moments, OneTwoThree) {
  MomentAccumulator acc;
  for (double x : {1.0, 2.0, 3.0}) acc.add(x);
  EXPECT_DOUBLE_EQ(acc.mean(), 2.0);
  EXPECT_DOUBLE_EQ(acc.m2(), 2.0);
  EXPECT_NEAR(acc.m3(), 0.0, 1e-15);
}

TEST(Moments, ConstantDataHasZeroSums) {
  MomentAccumulator acc;
  for (int i = 0; i < 4; ++i) acc.add(7.25);
  EXPECT_EQ(acc.m2(), 0.0);
  EXPECT_EQ(acc.m3(), 0.0);
  EXPECT_EQ(acc.m4(), 0.0);
  EXPECT_THROW((void)acc.finalize(), reliab::Error);
}

TEST(Moments, FinalizeOneToFive) {
  const std::vector<double> v{1, 2, 3, 4, 5};
  const GroupSummary s = reliab::summarize(v);
  EXPECT_EQ(s.n, 5u);
  EXPECT_DOUBLE_EQ(s.mean, 3.0);
  EXPECT_DOUBLE_EQ(s.variance, 2.0);
  EXPECT_NEAR(s.skewness, 0.0, 1e-15);
  EXPECT_NEAR(s.kurtosis, 1.7, 1e-14);
}

TEST(Moments, SymmetricSampleHasZeroSkewness) {
  const std::vector<double> v{-4, -1, 0, 0.5, 1, 4, -0.5, 10, -10};
  EXPECT_NEAR(reliab::summarize(v).skewness, 0.0, 1e-14);
}

TEST(Moments, ThreeZerosAndAOne) {
  const std::vector<double> v{0, 0, 0, 1};
  const GroupSummary s = reliab::summarize(v);
  const TwoPass o(v);
  EXPECT_DOUBLE_EQ(s.mean, 0.25);
  EXPECT_NEAR(s.variance, o.m2 / 4, 1e-15);
  EXPECT_NEAR(s.skewness, o.m3 / (4 * std::pow(o.m2 / 4, 1.5)), 1e-13);
  EXPECT_NEAR(s.kurtosis, o.m4 / (4 * std::pow(o.m2 / 4, 2)), 1e-13);
  // Two-point data attains the Pearson bound with equality.
  EXPECT_GE(s.kurtosis, s.skewness * s.skewness + 1.0 - 1e-12);
}

TEST(Moments, InsufficientData) {
  MomentAccumulator acc;
  EXPECT_THROW((void)acc.finalize(), reliab::Error);
  acc.add(1.0);
  try {
    (void)acc.finalize();
    FAIL();
  } catch (const reliab::Error& e) {
    EXPECT_EQ(e.kind(), reliab::ErrorKind::data);
  }
}

TEST(Moments, RejectsNonFinite) {
  MomentAccumulator acc;
  EXPECT_THROW(acc.add(std::numeric_limits<double>::quiet_NaN()), reliab::Error);
  EXPECT_THROW(acc.add(-std::numeric_limits<double>::infinity()), reliab::Error);
  EXPECT_EQ(acc.count(), 0u);
}

TEST(Moments, MatchesTwoPassOnSkewedData) {
  std::mt19937_64 rng(11);
  std::lognormal_distribution<double> ln(0.0, 1.0);
  std::vector<double> v(5000);
  for (double& x : v) x = 1e6 + ln(rng);
  MomentAccumulator acc;
  acc.add(v);
  const TwoPass o(v);
  expect_rel(acc.mean(), o.mean, 1e-12);
  expect_rel(acc.m2(), o.m2, 1e-9);
  expect_rel(acc.m3(), o.m3, 1e-8);
  expect_rel(acc.m4(), o.m4, 1e-8);
}

TEST(Moments, MergeIdentity) {
  const std::vector<double> v{3, 1, 4, 1, 5, 9, 2, 6};
  MomentAccumulator a;
  a.add(v);
  const GroupSummary before = a.finalize();
  a.merge(MomentAccumulator{});
  expect_same_summary(a.finalize(), before, 0.0);
  MomentAccumulator empty;
  empty.merge(a);
  expect_same_summary(empty.finalize(), before, 0.0);
}

TEST(Moments, MergeAnySplitOfOneToHundred) {
  std::vector<double> v;
  for (int i = 1; i <= 100; ++i) v.push_back(i);
  const GroupSummary whole = reliab::summarize(v);
  const TwoPass o(v);
  EXPECT_NEAR(whole.variance, o.m2 / 100, 1e-10);
  for (std::size_t cut = 0; cut <= v.size(); ++cut) {
    MomentAccumulator a, b;
    a.add(std::span<const double>(v.data(), cut));
    b.add(std::span<const double>(v.data() + cut, v.size() - cut));
    expect_same_summary(reliab::merge(a, b).finalize(), whole, 1e-10);
  }
}

TEST(Moments, MergeCommutes) {
  MomentAccumulator a, b;
  for (double x : {1.0, 2.0, 10.0}) a.add(x);
  for (double x : {-3.0, 0.5, 8.0, 8.0, 40.0}) b.add(x);
  expect_same_summary(reliab::merge(a, b).finalize(), reliab::merge(b, a).finalize(),
                      1e-14);
}

TEST(MomentsProperty, MergeBatchEquivalence) {
  std::mt19937_64 rng(2024);
  std::lognormal_distribution<double> ln(0.0, 1.5);
  std::normal_distribution<double> nd(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng() % 500;
    std::vector<double> v(n);
    for (double& x : v) x = (trial % 2 ? ln(rng) : nd(rng) * 50.0 + 3.0);
    const std::size_t cut = rng() % (n + 1);
    MomentAccumulator a, b;
    a.add(std::span<const double>(v.data(), cut));
    b.add(std::span<const double>(v.data() + cut, n - cut));
    const GroupSummary whole = reliab::summarize(v);
    expect_same_summary(reliab::merge(a, b).finalize(), whole, 1e-10);
  }
}

TEST(MomentsProperty, PearsonInequality) {
  std::mt19937_64 rng(7);
  std::lognormal_distribution<double> ln(0.0, 2.0);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::bernoulli_distribution coin(0.1);
  for (int trial = 0; trial < 10000; ++trial) {
    const std::size_t n = 2 + rng() % 60;
    std::vector<double> v(n);
    for (double& x : v) {
      switch (trial % 3) {
        case 0: x = ln(rng); break;
        case 1: x = u(rng); break;
        default: x = coin(rng) ? 1.0 : 0.0;
      }
    }
    v[0] = 0.0;
    v[1] = 1.0;
    const GroupSummary s = reliab::summarize(v);
    EXPECT_GE(s.kurtosis, s.skewness * s.skewness + 1.0 - 1e-9 * s.kurtosis) << trial;
  }
}

TEST(MomentsProperty, ShiftAndScale) {
  std::mt19937_64 rng(99);
  std::gamma_distribution<double> g(0.7, 2.0);
  std::vector<double> v(1000);
  for (double& x : v) x = g(rng);
  const GroupSummary base = reliab::summarize(v);
  for (double shift : {-50.0, 0.001, 1e4}) {
    std::vector<double> w = v;
    for (double& x : w) x += shift;
    const GroupSummary s = reliab::summarize(w);
    EXPECT_NEAR(s.skewness, base.skewness, 1e-9);
    EXPECT_NEAR(s.kurtosis, base.kurtosis, 1e-9);
  }
  for (double c : {1e-3, 3.0, 1e5}) {
    std::vector<double> w = v;
    for (double& x : w) x *= c;
    const GroupSummary s = reliab::summarize(w);
    EXPECT_NEAR(s.skewness, base.skewness, 1e-9);
    EXPECT_NEAR(s.kurtosis, base.kurtosis, 1e-9);
    expect_rel(s.variance, base.variance * c * c, 1e-12);
  }
}
