#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "qruler/distribution.hpp"
#include "qruler/error.hpp"

using namespace qruler;

namespace {

std::vector<double> axis(double lo, double step, std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = lo + step * static_cast<double>(i);
  return v;
}

std::vector<double> gaussian(const std::vector<double>& x, double s) {
  std::vector<double> p;
  for (double v : x) p.push_back(std::exp(-v * v / (2 * s * s)) / (s * std::sqrt(2 * std::numbers::pi)));
  return p;
}

}  // namespace

TEST(Distribution, GaussianHasUnitMass) {
  const auto x = axis(-10.0, 0.05, 401);
  const OutcomeDistribution d(x, gaussian(x, 1.0));
  EXPECT_NEAR(d.mass(), 1.0, 1e-12);
  EXPECT_DOUBLE_EQ(d.cell(), 0.05);
  EXPECT_FALSE(d.joint());
  EXPECT_NEAR(d.max_density(), 1.0 / std::sqrt(2 * std::numbers::pi), 1e-12);
}

TEST(Distribution, ClipsRoundingNegativesOnly) {
  const auto x = axis(-10.0, 0.05, 401);
  auto p = gaussian(x, 1.0);
  p[0] = -1e-14;
  const OutcomeDistribution d(x, p);
  EXPECT_EQ(d.density()[0], 0.0);
  p[0] = -1e-6;
  EXPECT_THROW(OutcomeDistribution(x, p), Error);
}

TEST(Distribution, RejectsBadMassAndAxes) {
  const auto x = axis(-10.0, 0.05, 401);
  auto p = gaussian(x, 1.0);
  for (double& v : p) v *= 1.01;
  try {
    OutcomeDistribution(x, p);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NormalizationFailure);
  }
  auto bent = x;
  bent[5] += 0.01;
  EXPECT_THROW(OutcomeDistribution(bent, gaussian(x, 1.0)), Error);
  EXPECT_THROW(OutcomeDistribution(x, std::vector<double>(3, 0.0)), Error);
}

TEST(Distribution, JointLayoutAndCell) {
  const auto m = axis(-8.0, 0.1, 161);
  const auto k = axis(-8.0, 0.2, 81);
  std::vector<double> p;
  for (double mv : m) {
    for (double kv : k) p.push_back(std::exp(-(mv * mv + kv * kv) / 2) / (2 * std::numbers::pi));
  }
  const OutcomeDistribution d(m, k, p);
  EXPECT_TRUE(d.joint());
  EXPECT_NEAR(d.cell(), 0.02, 1e-15);
  EXPECT_NEAR(d.mass(), 1.0, 1e-10);
  EXPECT_TRUE(d.same_grid(d));
}
