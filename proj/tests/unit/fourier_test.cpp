#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "rlab/fourier.hpp"
#include "rlab/oracle.hpp"
#include "rlab/samplers.hpp"
#include "rlab/simulator.hpp"
#include "rlab/stats.hpp"

namespace rlab {
namespace {

constexpr double kPi = std::numbers::pi;

OccupancyState random_state(std::size_t n, double rho, std::uint64_t seed) {
  Stream rng(seed);
  return sample_bernoulli(n, [rho](double) { return rho; }, rng);
}

TEST(Basis, ExplicitValues) {
  EXPECT_DOUBLE_EQ(psi(0, 0.3), 1.0);
  EXPECT_NEAR(psi(1, 0.125), std::sqrt(2.0) * std::cos(kPi / 4), 1e-15);
  EXPECT_NEAR(psi(-1, 0.125), std::sqrt(2.0) * std::sin(-kPi / 4), 1e-15);
  EXPECT_NEAR(psi(-2, 0.1), std::sqrt(2.0) * std::sin(-4 * kPi * 0.1), 1e-15);
  EXPECT_NEAR(std::abs(mode(3, 0.2) - std::conj(mode(-3, 0.2))), 0.0, 1e-15);
  EXPECT_DOUBLE_EQ(sobolev_weight(2), 1 + 16 * kPi * kPi);
}

TEST(Basis, DiscreteOrthonormality) {
  const int cutoff = 8;
  for (std::size_t n : {17u, 32u, 100u}) {
    double worst = 0.0;
    for (int j = -cutoff; j <= cutoff; ++j) {
      const auto fj = psi_grid(j, n);
      for (int k = -cutoff; k <= cutoff; ++k) {
        const auto fk = psi_grid(k, n);
        double inner = 0.0;
        for (std::size_t x = 0; x < n; ++x) inner += fj[x] * fk[x];
        worst = std::max(worst, std::abs(inner / n - (j == k ? 1.0 : 0.0)));
      }
    }
    EXPECT_LE(worst, 1e-12) << "n=" << n;
  }
}

TEST(Pairing, Examples) {
  EXPECT_DOUBLE_EQ(pair_empirical(OccupancyState::ones(12), psi_grid(0, 12)), 1.0);
  for (int k = -3; k <= 3; ++k) EXPECT_EQ(pair_empirical(OccupancyState::zeros(12), psi_grid(k, 12)), 0.0);
  EXPECT_NEAR(pair_empirical(OccupancyState({1, 0, 1, 0}), psi_grid(1, 4)), 0.0, 1e-15);
  EXPECT_EQ(pair_fluctuation(OccupancyState::zeros(8), 0.0, psi_grid(1, 8)), 0.0);
}

TEST(Projector, MatchesDirectPairings) {
  const std::size_t n = 96;
  const int cutoff = 6;
  const FieldProjector projector(n, cutoff);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const OccupancyState s = random_state(n, 0.4, seed);
    const PsiCoefficients empirical = projector.empirical_psi(s);
    const PsiCoefficients fluct = projector.fluctuation_psi(s, 0.4);
    const ComplexModes y = projector.fluctuation_modes(s, 0.4);
    for (int k = -cutoff; k <= cutoff; ++k) {
      const auto grid = psi_grid(k, n);
      EXPECT_NEAR(empirical[k], pair_empirical(s, grid), 1e-12);
      EXPECT_NEAR(fluct[k], pair_fluctuation(s, 0.4, grid), 1e-12);
      EXPECT_NEAR(std::abs(y[-k] - std::conj(y[k])), 0.0, 1e-12);
      Complex direct = 0.0;
      for (std::size_t x = 1; x <= n; ++x) direct += (s(x) - 0.4) * std::conj(mode(k, static_cast<double>(x) / n));
      EXPECT_NEAR(std::abs(y[k] - direct / std::sqrt(static_cast<double>(n))), 0.0, 1e-12);
    }
  }
}

TEST(Projector, RealAndComplexCoefficientsAgree) {
  const std::size_t n = 64;
  const FieldProjector projector(n, 4);
  const OccupancyState s = random_state(n, 0.7, 9);
  const PsiCoefficients direct = projector.empirical_psi(s);
  const PsiCoefficients rebuilt = psi_from_complex(projector.empirical_modes(s));
  for (int k = -4; k <= 4; ++k) EXPECT_NEAR(direct[k], rebuilt[k], 1e-12);
  const PsiCoefficients round_trip = psi_from_complex(complex_from_psi(direct));
  for (int k = -4; k <= 4; ++k) EXPECT_NEAR(direct[k], round_trip[k], 1e-15);
  for (int k = -4; k <= 4; ++k) EXPECT_LE(std::abs(direct[k]), std::sqrt(2.0));
}

TEST(Projector, CutoffLimitedToQuarterOfN) {
  EXPECT_THROW(FieldProjector(16, 5), std::invalid_argument);
  EXPECT_NO_THROW(FieldProjector(16, 4));
}

// E|Y(k)|^2 under nu_rho, summed exactly over all 2^n states.
TEST(Fluctuation, ComplexModeVarianceIsExact) {
  const int n = 8;
  for (double rho : {0.25, 0.5, 0.9}) {
    const oracle::MeasureVector nu = oracle::bernoulli_measure(n, rho);
    const FieldProjector projector(n, 2);
    for (int k = 1; k <= 2; ++k) {
      double second = 0.0;
      for (oracle::StateIndex s = 0; s < nu.size(); ++s) {
        std::vector<std::uint8_t> bits(n);
        for (int p = 1; p <= n; ++p) bits[p - 1] = static_cast<std::uint8_t>(oracle::occupation(s, p));
        second += nu[s] * std::norm(projector.fluctuation_modes(OccupancyState(bits), rho)[k]);
      }
      EXPECT_NEAR(second, rho * (1 - rho), 1e-12);
    }
  }
}

TEST(Fluctuation, VarianceOfPsiOneAtHalfDensity) {
  const std::size_t n = 1024;
  const auto grid = psi_grid(1, n);
  std::vector<double> values;
  std::vector<double> squares;
  for (int r = 0; r < 10000; ++r) {
    Stream rng = make_stream(31, static_cast<std::uint64_t>(r), StreamDomain::kParticle);
    const double y = pair_fluctuation(sample_bernoulli(n, [](double) { return 0.5; }, rng), 0.5, grid);
    values.push_back(y);
    squares.push_back(y * y);
  }
  const Estimate mean = estimate(values);
  const Estimate second = estimate(squares);
  EXPECT_NEAR(mean.mean, 0.0, 4.0 * mean.std_error);
  EXPECT_NEAR(second.mean, 0.25, 4.0 * second.std_error);
}

TEST(Fluctuation, MassIsConstantAlongTrajectory) {
  const std::size_t n = 128;
  const Dynamics dynamics(n, RateScheme::symmetric());
  OccupancyState state = random_state(n, 0.3, 4);
  const double mass = pair_empirical(state, psi_grid(0, n));
  EventClock clock(Stream(8));
  const auto grid = psi_grid(0, n);
  dynamics.advance_to(state, clock, 0.01, [&](double, double, const OccupancyState& s) {
    ASSERT_EQ(pair_empirical(s, grid), mass);
  });
}

TEST(Sobolev, SingleModes) {
  PsiCoefficients zero(3);
  zero[0] = 1.0;
  for (double m : {0.5, 2.0, 7.0}) EXPECT_DOUBLE_EQ(sobolev_minus_norm(zero, m), 1.0);
  PsiCoefficients one(3);
  one[1] = 1.0;
  EXPECT_NEAR(sobolev_minus_norm(one, 2.0), 1.0 / (1 + 4 * kPi * kPi), 1e-15);
  EXPECT_THROW(sobolev_minus_norm(one, 0.0), std::invalid_argument);
}

TEST(Sobolev, BoundedAndMonotoneInM) {
  const int cutoff = 64;
  PsiCoefficients c(cutoff);
  double series = 0.0;
  for (int k = -cutoff; k <= cutoff; ++k) {
    c[k] = std::sqrt(2.0);
    series += 1.0 / std::pow(sobolev_weight(k), 2.0);
  }
  EXPECT_LE(sobolev_minus_norm(c, 2.0), std::sqrt(2.0) * std::sqrt(series) * (1 + 1e-14));
  double previous = sobolev_minus_norm(c, 0.5);
  for (double m : {1.0, 1.5, 2.5, 4.0}) {
    const double v = sobolev_minus_norm(c, m);
    EXPECT_LT(v, previous);
    EXPECT_GE(v, 0.0);
    previous = v;
  }
}

}  // namespace
}  // namespace rlab
