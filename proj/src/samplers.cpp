#include "rlab/samplers.hpp"

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rlab {

OccupancyState sample_bernoulli(std::size_t n, const std::function<double(double)>& profile, Stream& rng) {
  std::vector<std::uint8_t> bits(n);
  for (std::size_t x = 1; x <= n; ++x) {
    const double p = profile(static_cast<double>(x) / static_cast<double>(n));
    if (!(p >= 0.0 && p <= 1.0)) {
      throw std::invalid_argument("profile value " + std::to_string(p) + " outside [0,1] at x = " + std::to_string(x));
    }
    bits[x - 1] = rng.uniform() < p ? 1 : 0;
  }
  return OccupancyState(std::move(bits));
}

OccupancyState sample_hyperplane(std::size_t n, std::size_t particles, Stream& rng) {
  if (n < 4) throw std::invalid_argument("deck size must be at least 4");
  if (particles > n) throw std::invalid_argument("particle count exceeds deck size");
  std::vector<std::uint8_t> bits(n, 0);
  for (std::size_t i = 0; i < particles; ++i) bits[i] = 1;
  for (std::size_t i = n - 1; i > 0; --i) std::swap(bits[i], bits[rng.below(i + 1)]);
  return OccupancyState(std::move(bits));
}

}  // namespace rlab
