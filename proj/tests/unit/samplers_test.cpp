#include <gtest/gtest.h>

#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <map>
#include <numbers>

#include "rlab/fourier.hpp"
#include "rlab/samplers.hpp"
#include "rlab/stats.hpp"

namespace rlab {
namespace {

TEST(SampleBernoulli, ConstantOneGivesAllOnes) {
  Stream rng(1);
  EXPECT_EQ(sample_bernoulli(17, [](double) { return 1.0; }, rng), OccupancyState::ones(17));
  EXPECT_EQ(sample_bernoulli(17, [](double) { return 0.0; }, rng), OccupancyState::zeros(17));
}

TEST(SampleBernoulli, RejectsProfileOutsideUnitInterval) {
  Stream rng(1);
  EXPECT_THROW(sample_bernoulli(8, [](double u) { return u < 0.5 ? 0.5 : 1.5; }, rng), std::invalid_argument);
  EXPECT_THROW(sample_bernoulli(8, [](double) { return -0.01; }, rng), std::invalid_argument);
}

TEST(SampleBernoulli, MeanParticleCount) {
  const std::size_t n = 100;
  const double rho = 0.3;
  constexpr int kReplicas = 2000;
  std::vector<double> counts;
  for (int r = 0; r < kReplicas; ++r) {
    Stream rng = make_stream(2, static_cast<std::uint64_t>(r), StreamDomain::kParticle);
    counts.push_back(static_cast<double>(sample_bernoulli(n, [&](double) { return rho; }, rng).particle_count()));
  }
  const Estimate e = estimate(counts);
  EXPECT_NEAR(e.mean, n * rho, 4.0 * std::sqrt(n * rho * (1 - rho) / kReplicas));
}

TEST(SampleBernoulli, SineProfilePairing) {
  const std::size_t n = 2048;
  auto profile = [](double u) { return 0.5 + std::sin(2 * std::numbers::pi * u) / 4; };
  // Midpoint quadrature of int psi_{-1} rho0; psi_{-1}(u) = sqrt(2) sin(-2 pi u).
  constexpr int kNodes = 100000;
  double integral = 0.0;
  for (int i = 0; i < kNodes; ++i) {
    const double u = (i + 0.5) / kNodes;
    integral += std::sqrt(2.0) * std::sin(-2 * std::numbers::pi * u) * profile(u) / kNodes;
  }
  EXPECT_NEAR(integral, -std::sqrt(2.0) / 8, 1e-12);

  const auto grid = psi_grid(-1, n);
  std::vector<double> pairings;
  for (int r = 0; r < 400; ++r) {
    Stream rng = make_stream(3, static_cast<std::uint64_t>(r), StreamDomain::kParticle);
    pairings.push_back(pair_empirical(sample_bernoulli(n, profile, rng), grid));
  }
  const Estimate e = estimate(pairings);
  EXPECT_NEAR(e.mean, integral, 4.0 * e.std_error);
}

TEST(SampleHyperplane, Extremes) {
  Stream rng(4);
  EXPECT_EQ(sample_hyperplane(9, 0, rng), OccupancyState::zeros(9));
  EXPECT_EQ(sample_hyperplane(9, 9, rng), OccupancyState::ones(9));
  EXPECT_THROW(sample_hyperplane(9, 10, rng), std::invalid_argument);
}

TEST(SampleHyperplane, UniformOverTwentyConfigurations) {
  Stream rng(5);
  std::map<std::vector<std::uint8_t>, int> counts;
  constexpr int kDraws = 100000;
  for (int i = 0; i < kDraws; ++i) {
    const auto s = sample_hyperplane(6, 3, rng);
    ASSERT_EQ(s.particle_count(), 3u);
    ++counts[s.logical()];
  }
  ASSERT_EQ(counts.size(), 20u);
  const double expected = kDraws / 20.0;
  double chi2 = 0.0;
  for (const auto& [_, c] : counts) chi2 += (c - expected) * (c - expected) / expected;
  const boost::math::chi_squared dist(19);
  EXPECT_LT(chi2, boost::math::quantile(dist, 0.99));
}

}  // namespace
}  // namespace rlab
