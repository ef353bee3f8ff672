#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rlab/field_sample.hpp"
#include "rlab/harness/config.hpp"
#include "rlab/harness/report.hpp"
#include "rlab/reference.hpp"
#include "rlab/ring.hpp"
#include "rlab/simulator.hpp"
#include "rlab/stats.hpp"

namespace rlab::harness {

struct RunOutput {
  /// Ordered by replica, then observation time, then mode.
  std::vector<FieldSample> samples;
  Telemetry telemetry;
};

/// Runs the configured simulation. Output is independent of `threads`.
/// oracle-validate produces no samples; spde-reference emits "spde" rows for
/// the first csv_replica_limit paths.
RunOutput simulate(const ExperimentConfig& config, unsigned threads);

/// Builds every comparison from the samples. References that are themselves
/// Monte Carlo estimates (the SPDE oracle) are recomputed from the config and
/// seed, so evaluating a CSV reproduces the report of the run that wrote it.
ComparisonReport evaluate(const ExperimentConfig& config, std::span<const FieldSample> samples,
                          const Telemetry& telemetry);

struct ExperimentResult {
  RunOutput run;
  ComparisonReport report;
};

ExperimentResult run_experiment(const ExperimentConfig& config, unsigned threads);

/// Entry points for one experiment family; throw ConfigError on a mismatched kind.
ExperimentResult run_hydro(const ExperimentConfig& config, unsigned threads);
ExperimentResult run_fluctuations(const ExperimentConfig& config, unsigned threads);
ExperimentResult run_boundary_decay(const ExperimentConfig& config, unsigned threads);
ComparisonReport run_oracle_validate(const ExperimentConfig& config);

/// Runs one trajectory for `horizon` units of macroscopic time and returns
/// sup_{t <= horizon} |sqrt(n) int_0^t (eta_s(1) - eta_s(r)) ds|^2. The
/// integral is piecewise linear, so the supremum is taken over event times.
double boundary_sup_functional(const Dynamics& dynamics, OccupancyState& state, EventClock& clock, double horizon,
                               std::size_t r, std::uint64_t* events = nullptr);

/// Monte Carlo of the spectral SPDE from its equilibrium law. Entry
/// [i * modes.size() + j] belongs to (times[i], modes[j]).
struct SpdeMonteCarlo {
  std::vector<double> times;
  std::vector<int> modes;
  std::vector<ComplexEstimate> autocovariance;  // E[X_t(k) conj X_0(k)]
  std::vector<Estimate> second_moment;          // E|X_t(k)|^2
};

/// Paths use make_stream(seed, path, kSpde). When `rows` is given, the first
/// `row_limit` paths are appended as "spde" samples.
SpdeMonteCarlo spde_monte_carlo(const SpdeParams& params, std::span<const double> times, std::span<const int> modes,
                                std::size_t paths, int substeps, std::uint64_t seed,
                                std::vector<FieldSample>* rows = nullptr, std::size_t row_limit = 0);

/// Largest residuals of the exact-integrator identities over `paths` paths:
/// modulus conservation (sigma^2 = 2 nu), two half steps against one step on
/// the summed increment, and the noiseless, driftless heat decay.
struct SpdeExactness {
  double modulus = 0.0;
  double composition = 0.0;
  double heat = 0.0;
};

SpdeExactness spde_exactness(const SpdeParams& params, double horizon, int steps, std::size_t paths,
                             std::uint64_t seed);

}  // namespace rlab::harness
