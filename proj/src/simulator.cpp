#include "rlab/simulator.hpp"

namespace rlab {

Dynamics::Dynamics(std::size_t n, const RateScheme& scheme)
    : n_(n), rates_(scheme.at(static_cast<int>(n))), beta_(scheme.beta()) {
  const double speedup = beta_ == 1 ? static_cast<double>(n) : static_cast<double>(n) * static_cast<double>(n);
  event_rate_ = speedup * rates_.total();
  cumulative_[0] = rates_.a;
  cumulative_[1] = rates_.a + rates_.b;
  cumulative_[2] = rates_.a + rates_.b + rates_.c;
}

}  // namespace rlab
