#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>

#include "rlab/rates.hpp"
#include "rlab/ring.hpp"
#include "rlab/rng.hpp"

namespace rlab {

/// Macroscopic time, event count and the random stream of one trajectory.
///
/// The next event time is drawn lazily and kept pending, so stopping at an
/// observation time never consumes or discards randomness: a trajectory is a
/// pure function of (initial state, scheme, stream) whatever the observation
/// schedule.
struct EventClock {
  explicit EventClock(Stream stream) : rng(stream) {}

  double time = 0.0;
  std::uint64_t events = 0;
  Stream rng;
  double pending_event = std::numeric_limits<double>::quiet_NaN();
};

struct RunSummary {
  std::uint64_t events = 0;
};

/// Gillespie-style simulator of the (projected) generalized Rudvalis chain at
/// time scale n^beta. Events arrive at constant rate n^beta * R_n; the move is
/// chosen with probabilities proportional to (a_n, b_n, c_n, d_n).
class Dynamics {
 public:
  /// Throws std::invalid_argument ("degenerate chain" when R_n = 0).
  Dynamics(std::size_t n, const RateScheme& scheme);

  std::size_t n() const noexcept { return n_; }
  const Rates& rates() const noexcept { return rates_; }
  int beta() const noexcept { return beta_; }
  /// n^beta * R_n, events per unit of macroscopic time.
  double event_rate() const noexcept { return event_rate_; }

  MoveKind draw_move(Stream& rng) const noexcept {
    const double u = rng.uniform() * rates_.total();
    if (u < cumulative_[0]) return MoveKind::kTopToPenultimate;
    if (u < cumulative_[1]) return MoveKind::kTopToBottom;
    if (u < cumulative_[2]) return MoveKind::kBottomToTop;
    return MoveKind::kSwapTopTwo;
  }

  /// Advances to the next event and applies it.
  template <class State>
  MoveKind step(State& state, EventClock& clock) const {
    if (std::isnan(clock.pending_event)) clock.pending_event = clock.time + clock.rng.exponential(event_rate_);
    clock.time = clock.pending_event;
    clock.pending_event = std::numeric_limits<double>::quiet_NaN();
    ++clock.events;
    const MoveKind move = draw_move(clock.rng);
    state.apply(move);
    return move;
  }

  /// Executes every event with time <= t and leaves the clock at t.
  template <class State, class OnEvent>
  std::uint64_t advance_to(State& state, EventClock& clock, double t, OnEvent&& on_event) const {
    std::uint64_t executed = 0;
    while (true) {
      if (std::isnan(clock.pending_event)) clock.pending_event = clock.time + clock.rng.exponential(event_rate_);
      if (clock.pending_event > t) break;
      const double before = clock.time;
      step(state, clock);
      on_event(before, clock.time, state);
      ++executed;
    }
    clock.time = t;
    return executed;
  }

  template <class State>
  std::uint64_t advance_to(State& state, EventClock& clock, double t) const {
    return advance_to(state, clock, t, [](double, double, const State&) {});
  }

  /// Runs to t_target, calling observer(index, time, state) at each
  /// observation time. Times must be sorted and lie in [clock.time, t_target].
  template <class State, class Observer>
  RunSummary run_until(State& state, EventClock& clock, double t_target, std::span<const double> observation_times,
                       Observer&& observer) const {
    double previous = clock.time;
    for (double t : observation_times) {
      if (!(t >= previous) || t > t_target) {
        throw std::invalid_argument("observation times must be sorted and within [now, t_target]");
      }
      previous = t;
    }
    RunSummary summary;
    for (std::size_t i = 0; i < observation_times.size(); ++i) {
      summary.events += advance_to(state, clock, observation_times[i]);
      observer(i, observation_times[i], static_cast<const State&>(state));
    }
    summary.events += advance_to(state, clock, t_target);
    return summary;
  }

 private:
  std::size_t n_;
  Rates rates_;
  int beta_;
  double event_rate_;
  double cumulative_[3];
};

}  // namespace rlab
