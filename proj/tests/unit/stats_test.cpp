#include <gtest/gtest.h>

#include <cmath>

#include "rlab/fourier.hpp"
#include "rlab/rng.hpp"
#include "rlab/stats.hpp"

namespace rlab {
namespace {

TEST(Estimate, SmallExample) {
  const std::vector<double> x{1, 2, 3, 4};
  const Estimate e = estimate(x);
  EXPECT_DOUBLE_EQ(e.mean, 2.5);
  EXPECT_DOUBLE_EQ(e.variance, 5.0 / 3.0);
  EXPECT_DOUBLE_EQ(e.std_error, std::sqrt(5.0 / 3.0 / 4.0));
  EXPECT_EQ(e.count, 4u);
}

TEST(Estimate, IdenticalSamplesHaveZeroVariance) {
  const std::vector<double> x(10, 0.37);
  EXPECT_NEAR(estimate(x).variance, 0.0, 1e-30);
}

TEST(Estimate, NeedsTwoSamples) {
  EXPECT_THROW(estimate(std::vector<double>{1.0}), std::invalid_argument);
  EXPECT_THROW(estimate(std::vector<Complex>{}), std::invalid_argument);
}

TEST(Estimate, NormalMeanWithinClt) {
  Stream rng(1);
  std::vector<double> x(10000);
  for (auto& v : x) v = rng.normal();
  EXPECT_LT(std::abs(estimate(x).mean), 4.0 / std::sqrt(10000.0));
}

TEST(Covariance, OfSelfIsVariance) {
  Stream rng(2);
  std::vector<double> x(500);
  for (auto& v : x) v = rng.uniform();
  EXPECT_NEAR(covariance(x, x), estimate(x).variance, 1e-15);
  std::vector<double> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = -2.0 * x[i] + 1.0;
  EXPECT_NEAR(covariance(x, y), -2.0 * estimate(x).variance, 1e-14);
}

TEST(ComplexEstimate, PhaseErrorByDeltaMethod) {
  Stream rng(3);
  constexpr int kSamples = 20000;
  std::vector<Complex> z(kSamples);
  for (auto& v : z) v = Complex(1.0 + 0.1 * rng.normal(), 0.2 * rng.normal());
  const ComplexEstimate e = estimate(std::span<const Complex>(z));
  // Near the positive real axis d(arg)/d(im) = 1/re, so SE(arg) ~ SE(im)/re.
  EXPECT_NEAR(e.phase_std_error, 0.2 / std::sqrt(kSamples), 0.1 * 0.2 / std::sqrt(kSamples));
  EXPECT_NEAR(e.re.mean, 1.0, 4.0 * e.re.std_error);
}

}  // namespace
}  // namespace rlab
