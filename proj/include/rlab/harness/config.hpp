#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "rlab/fourier.hpp"
#include "rlab/rates.hpp"

namespace rlab::harness {

/// Invalid or inconsistent experiment configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ExperimentKind {
  kHydroHyperbolic,
  kHydroDiffusive,
  kFluctsHyperbolic,
  kFluctsDiffusive,
  kBoundaryDecay,
  kStationarity,
  kOracleValidate,
  kSpdeReference,
};

std::string_view to_string(ExperimentKind kind) noexcept;
ExperimentKind parse_experiment(std::string_view name);

enum class InitialMeasure { kBernoulli, kHyperplane };

struct Tolerances {
  /// Monte Carlo comparisons pass when |z| <= z.
  double z = 4.0;
  /// Comparisons with a larger standard error are inconclusive.
  double max_std_error = std::numeric_limits<double>::infinity();
  /// Exact identities pass when the residual is <= exact.
  double exact = 1e-12;
};

struct OracleGrid {
  std::vector<int> sizes{4, 5, 6, 7, 8, 9, 10};
  std::vector<double> densities{0.0, 0.25, 0.5, 0.9};
  std::vector<std::string> presets{"rudvalis", "symmetric", "weak-asym"};
  double weak_gamma = 1.0;
  int random_functions = 50;
  int max_mode = 3;
};

struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::kHydroHyperbolic;
  std::size_t n = 1024;
  RateScheme scheme = RateScheme::rudvalis();
  DensityProfile profile = DensityProfile::constant(0.5);
  double rho = 0.5;
  InitialMeasure initial = InitialMeasure::kBernoulli;
  int cutoff = 8;
  /// Modes compared; empty means every |k| <= K (k >= 1 for complex modes).
  std::vector<int> modes;
  std::vector<double> times{0.0};
  std::size_t replicas = 64;
  std::uint64_t seed = 1;
  unsigned threads = 0;
  Tolerances tolerance;

  // boundary-decay
  std::vector<std::size_t> ladder{64, 128, 256};
  bool boundary_last = true;  // r = n if true, r = 2 otherwise
  double horizon = 1.0;

  // spde-reference and the target confirmation of flucts-diffusive
  std::size_t spde_paths = 100000;
  int spde_substeps = 4;

  /// Replicas beyond this index are simulated but not written to CSV.
  std::size_t csv_replica_limit = std::numeric_limits<std::size_t>::max();

  OracleGrid oracle;

  int beta() const noexcept { return scheme.beta(); }
  /// Modes to compare, resolved against `cutoff`.
  std::vector<int> resolved_modes(bool complex_modes) const;
  /// Largest observation time.
  double horizon_time() const;
};

/// Parses and validates; presets are expanded. Throws ConfigError.
ExperimentConfig parse_config(const nlohmann::json& document);
/// Reads a JSON file. Throws ConfigError if unreadable or invalid.
ExperimentConfig load_config(const std::string& path);
/// Self-contained archival form (presets expanded); parse_config accepts it.
nlohmann::json to_json(const ExperimentConfig& config);

/// Default configuration for an experiment (acceptance-sized where the
/// experiment has an acceptance criterion).
ExperimentConfig default_config(ExperimentKind kind);

}  // namespace rlab::harness
