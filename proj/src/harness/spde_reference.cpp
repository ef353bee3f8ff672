#include <algorithm>
#include <cmath>
#include <numbers>

#include "rlab/harness/experiments.hpp"
#include "rlab/rng.hpp"

namespace rlab::harness {

SpdeMonteCarlo spde_monte_carlo(const SpdeParams& params, std::span<const double> times, std::span<const int> modes,
                                std::size_t paths, int substeps, std::uint64_t seed, std::vector<FieldSample>* rows,
                                std::size_t row_limit) {
  params.validate();
  if (substeps < 1) throw std::invalid_argument("substeps must be positive");
  for (int k : modes) {
    if (k < 1 || k > params.cutoff) throw std::invalid_argument("SPDE modes must lie in [1, K]");
  }
  const std::size_t cells = times.size() * modes.size();
  std::vector<std::vector<Complex>> products(cells, std::vector<Complex>(paths));
  std::vector<std::vector<double>> squares(cells, std::vector<double>(paths));

  for (std::size_t p = 0; p < paths; ++p) {
    Stream rng = make_stream(seed, p, StreamDomain::kSpde);
    SpdeState state = spde_init_equilibrium(params, rng);
    const ComplexModes initial = state.modes;
    for (std::size_t i = 0; i < times.size(); ++i) {
      const double gap = times[i] - state.time;
      if (gap < 0.0) throw std::invalid_argument("SPDE observation times must be sorted");
      if (gap > 0.0) {
        for (int s = 0; s < substeps; ++s) spde_step(state, params, gap / substeps, rng);
        state.time = times[i];
      }
      for (std::size_t j = 0; j < modes.size(); ++j) {
        const Complex x = state.modes[modes[j]];
        products[i * modes.size() + j][p] = x * std::conj(initial[modes[j]]);
        squares[i * modes.size() + j][p] = std::norm(x);
        if (rows != nullptr && p < row_limit) {
          rows->push_back(FieldSample{"", 0, 2, times[i], modes[j], SampleKind::kSpde, x.real(), x.imag(), p, seed});
        }
      }
    }
  }

  SpdeMonteCarlo out;
  out.times.assign(times.begin(), times.end());
  out.modes.assign(modes.begin(), modes.end());
  for (std::size_t c = 0; c < cells; ++c) {
    out.autocovariance.push_back(estimate(std::span<const Complex>(products[c])));
    out.second_moment.push_back(estimate(std::span<const double>(squares[c])));
  }
  if (rows != nullptr) {
    // Row order: path, then time, then mode.
    std::stable_sort(rows->begin(), rows->end(),
                     [](const FieldSample& a, const FieldSample& b) { return a.replica < b.replica; });
  }
  return out;
}

SpdeExactness spde_exactness(const SpdeParams& params, double horizon, int steps, std::size_t paths,
                             std::uint64_t seed) {
  params.validate();
  if (!(horizon > 0.0) || steps < 1) throw std::invalid_argument("need a positive horizon and step count");
  SpdeParams noiseless = params;
  noiseless.noise = 0.0;
  noiseless.matched_noise = false;
  noiseless.drift = 0.0;
  const double dt = horizon / steps;

  SpdeExactness out;
  for (std::size_t p = 0; p < paths; ++p) {
    Stream rng = make_stream(seed, p, StreamDomain::kOracleCheck);
    const SpdeState start = spde_init_equilibrium(params, rng);

    SpdeState path = start;
    for (int s = 0; s < steps; ++s) {
      const double first = std::sqrt(dt / 2) * rng.normal();
      const double second = std::sqrt(dt / 2) * rng.normal();
      const SpdeState before = path;
      spde_advance(path, params, dt, first + second);
      SpdeState split = before;
      spde_advance(split, params, dt / 2, first);
      spde_advance(split, params, dt / 2, second);
      for (int k = 1; k <= params.cutoff; ++k) {
        out.composition = std::max(out.composition, std::abs(split.modes[k] - path.modes[k]));
        if (params.matched_noise) {
          out.modulus = std::max(out.modulus, std::abs(std::abs(path.modes[k]) - std::abs(start.modes[k])));
        }
      }
    }

    SpdeState heat = start;
    spde_advance(heat, noiseless, horizon, 0.0);
    for (int k = 1; k <= params.cutoff; ++k) {
      const double wave = 2.0 * std::numbers::pi * k;
      const Complex expected = start.modes[k] * std::exp(-params.viscosity * wave * wave * horizon);
      out.heat = std::max(out.heat, std::abs(heat.modes[k] - expected));
    }
  }
  return out;
}

}  // namespace rlab::harness
