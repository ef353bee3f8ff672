#include <gtest/gtest.h>

#include <chrono>
#include <cmath>

#include "rlab/samplers.hpp"
#include "rlab/simulator.hpp"

namespace rlab {
namespace {

std::array<double, 4> move_frequencies(const RateScheme& scheme, int draws) {
  const Dynamics dynamics(64, scheme);
  Stream rng(21);
  std::array<double, 4> counts{};
  for (int i = 0; i < draws; ++i) counts[static_cast<std::size_t>(dynamics.draw_move(rng))] += 1.0;
  for (auto& c : counts) c /= draws;
  return counts;
}

void expect_frequencies(const std::array<double, 4>& observed, const std::array<double, 4>& expected, int draws) {
  for (std::size_t m = 0; m < 4; ++m) {
    const double se = std::sqrt(expected[m] * (1.0 - expected[m]) / draws);
    if (expected[m] == 0.0) {
      EXPECT_EQ(observed[m], 0.0) << "move " << m;
    } else {
      EXPECT_NEAR(observed[m], expected[m], 4.0 * se) << "move " << m;
    }
  }
}

TEST(Dynamics, RudvalisPresetUsesTwoMovesEqually) {
  constexpr int kDraws = 100000;
  expect_frequencies(move_frequencies(RateScheme::rudvalis(), kDraws), {0.5, 0.5, 0.0, 0.0}, kDraws);
}

TEST(Dynamics, SymmetricPresetUsesThreeMovesEqually) {
  constexpr int kDraws = 100000;
  expect_frequencies(move_frequencies(RateScheme::symmetric(), kDraws), {0.0, 1.0 / 3, 1.0 / 3, 1.0 / 3}, kDraws);
}

TEST(Dynamics, DegenerateChainRejected) {
  try {
    Dynamics(8, RateScheme::fixed(0, 0, 0, 0, 1));
    FAIL() << "expected an exception";
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("degenerate chain"), std::string::npos);
  }
  EXPECT_THROW(Dynamics(8, RateScheme::fixed(0, 0, 0, 1, 1)), std::invalid_argument);
  EXPECT_THROW(RateScheme::fixed(-0.1, 0.5, 0, 0, 1), std::invalid_argument);
  EXPECT_THROW(Dynamics(3, RateScheme::rudvalis()), std::invalid_argument);
}

TEST(Dynamics, EventRateIsScaledTotalRate) {
  EXPECT_DOUBLE_EQ(Dynamics(100, RateScheme::rudvalis()).event_rate(), 100.0);
  EXPECT_DOUBLE_EQ(Dynamics(100, RateScheme::symmetric()).event_rate(), 7500.0);
}

TEST(Dynamics, WeakAsymmetryRealizedExactly) {
  const RateScheme scheme = RateScheme::weak_asym(1.0, 0.25, 0.0);
  for (int n : {4, 10, 512}) {
    const Rates r = scheme.at(n);
    EXPECT_EQ(r.a, 0.0);
    EXPECT_EQ(r.c, 0.25);
    EXPECT_NEAR(r.a + r.b - r.c, 1.0 / n, 1e-15);
  }
}

TEST(Dynamics, SameSeedSameEvents) {
  const Dynamics dynamics(32, RateScheme::symmetric());
  auto run = [&] {
    Stream rng(5);
    OccupancyState state = sample_hyperplane(32, 10, rng);
    EventClock clock(rng);
    std::vector<std::pair<double, MoveKind>> events;
    for (int i = 0; i < 500; ++i) {
      const MoveKind m = dynamics.step(state, clock);
      events.emplace_back(clock.time, m);
    }
    return std::pair(events, state.logical());
  };
  EXPECT_EQ(run(), run());
}

TEST(Dynamics, ZeroHorizonLeavesStateUnchanged) {
  const Dynamics dynamics(8, RateScheme::rudvalis());
  OccupancyState state({1, 1, 0, 0, 1, 0, 0, 0});
  const auto before = state.logical();
  EventClock clock(Stream(1));
  int calls = 0;
  const std::vector<double> times{0.0};
  const RunSummary summary = dynamics.run_until(state, clock, 0.0, times, [&](std::size_t, double t, const OccupancyState& s) {
    ++calls;
    EXPECT_EQ(t, 0.0);
    EXPECT_EQ(s.logical(), before);
  });
  EXPECT_EQ(calls, 1);
  EXPECT_EQ(summary.events, 0u);
  EXPECT_EQ(state.logical(), before);
}

TEST(Dynamics, ObserversSeeMonotoneTimes) {
  const Dynamics dynamics(16, RateScheme::rudvalis());
  OccupancyState state = OccupancyState::zeros(16);
  EventClock clock(Stream(2));
  std::vector<double> seen;
  const std::vector<double> times{0.5, 1.0};
  dynamics.run_until(state, clock, 1.0, times, [&](std::size_t i, double t, const OccupancyState&) {
    EXPECT_EQ(t, times[i]);
    seen.push_back(t);
  });
  EXPECT_EQ(seen, times);
  EXPECT_EQ(clock.time, 1.0);
}

TEST(Dynamics, RejectsUnsortedObservationTimes) {
  const Dynamics dynamics(16, RateScheme::rudvalis());
  OccupancyState state = OccupancyState::zeros(16);
  EventClock clock(Stream(2));
  const std::vector<double> times{0.5, 0.25};
  EXPECT_THROW(dynamics.run_until(state, clock, 1.0, times, [](std::size_t, double, const OccupancyState&) {}),
               std::invalid_argument);
}

TEST(Dynamics, EventCountIsPoissonWithMeanN) {
  const std::size_t n = 1024;
  const Dynamics dynamics(n, RateScheme::fixed(0.5, 0.5, 0.0, 0.0, 1));
  constexpr int kReplicas = 200;
  double sum = 0.0;
  for (int r = 0; r < kReplicas; ++r) {
    OccupancyState state = OccupancyState::zeros(n);
    EventClock clock(make_stream(9, static_cast<std::uint64_t>(r), StreamDomain::kParticle));
    sum += static_cast<double>(dynamics.advance_to(state, clock, 1.0));
  }
  // Poisson(1024): variance equals the mean.
  EXPECT_NEAR(sum / kReplicas, 1024.0, 5.0 * std::sqrt(1024.0 / kReplicas));
}

TEST(Dynamics, ObservationScheduleDoesNotChangeTrajectory) {
  const Dynamics dynamics(64, RateScheme::symmetric());
  auto final_state = [&](std::vector<double> times) {
    Stream rng(17);
    OccupancyState state = sample_hyperplane(64, 20, rng);
    EventClock clock(rng);
    const RunSummary summary =
        dynamics.run_until(state, clock, 0.01, times, [](std::size_t, double, const OccupancyState&) {});
    return std::pair(state.logical(), summary.events);
  };
  EXPECT_EQ(final_state({}), final_state({0.001, 0.002, 0.005, 0.0051}));
}

TEST(Dynamics, ParticleCountConservedAlongTrajectory) {
  const Dynamics dynamics(50, RateScheme::fixed(0.2, 0.3, 0.25, 0.25, 2));
  Stream rng(3);
  OccupancyState state = sample_hyperplane(50, 17, rng);
  EventClock clock(rng);
  dynamics.advance_to(state, clock, 0.5, [](double, double, const OccupancyState& s) {
    ASSERT_EQ(s.particle_count(), 17u);
  });
}

// Per-event work must not grow with n: compare 2^10 and 2^20 sites.
TEST(Dynamics, PerEventCostIndependentOfN) {
  auto seconds_per_event = [](std::size_t n) {
    const Dynamics dynamics(n, RateScheme::fixed(0.25, 0.25, 0.25, 0.25, 1));
    OccupancyState state = OccupancyState::zeros(n);
    EventClock clock(Stream(1));
    const double horizon = 3e6 / dynamics.event_rate();
    const auto start = std::chrono::steady_clock::now();
    const auto events = dynamics.advance_to(state, clock, horizon);
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    return elapsed.count() / static_cast<double>(events);
  };
  const double small = seconds_per_event(std::size_t{1} << 10);
  const double large = seconds_per_event(std::size_t{1} << 20);
  EXPECT_LT(large, 4.0 * small) << "small=" << small << " large=" << large;
}

}  // namespace
}  // namespace rlab
