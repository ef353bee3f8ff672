#pragma once

#include <cstddef>
#include <functional>

#include "rlab/ring.hpp"
#include "rlab/rng.hpp"

namespace rlab {

/// eta(x) ~ Bernoulli(profile(x/n)) independently for x = 1..n. A constant
/// profile gives an exact sample of the product measure nu_rho.
/// Throws std::invalid_argument if the profile leaves [0,1] on the grid.
OccupancyState sample_bernoulli(std::size_t n, const std::function<double(double)>& profile, Stream& rng);

/// Uniform configuration with exactly `particles` ones (Fisher-Yates on a fixed multiset).
OccupancyState sample_hyperplane(std::size_t n, std::size_t particles, Stream& rng);

}  // namespace rlab
