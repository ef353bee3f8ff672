#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "rlab/fourier.hpp"
#include "rlab/harness/experiments.hpp"
#include "rlab/harness/parallel.hpp"
#include "rlab/rng.hpp"
#include "rlab/samplers.hpp"

namespace rlab::harness {

namespace {

struct ReplicaOutput {
  std::vector<FieldSample> rows;
  std::uint64_t events = 0;
  bool conserved = true;
};

int max_abs_mode(std::span<const int> modes) {
  int k_max = 0;
  for (int k : modes) k_max = std::max(k_max, std::abs(k));
  return k_max;
}

OccupancyState initial_state(const ExperimentConfig& cfg, std::size_t n, bool use_profile, Stream& rng) {
  if (cfg.initial == InitialMeasure::kHyperplane) {
    return sample_hyperplane(n, static_cast<std::size_t>(std::llround(cfg.rho * static_cast<double>(n))), rng);
  }
  if (use_profile) {
    return sample_bernoulli(n, [&](double u) { return cfg.profile(u); }, rng);
  }
  const double rho = cfg.rho;
  return sample_bernoulli(n, [rho](double) { return rho; }, rng);
}

RunOutput fold(std::vector<ReplicaOutput>& replicas) {
  RunOutput out;
  std::size_t total = 0;
  for (const auto& r : replicas) total += r.rows.size();
  out.samples.reserve(total);
  for (auto& r : replicas) {
    out.telemetry.events += r.events;
    ++out.telemetry.trajectories;
    if (!r.conserved) ++out.telemetry.conservation_violations;
    std::move(r.rows.begin(), r.rows.end(), std::back_inserter(out.samples));
  }
  out.telemetry.recorded = true;
  return out;
}

RunOutput simulate_fields(const ExperimentConfig& cfg, unsigned threads) {
  const std::string experiment(to_string(cfg.experiment));
  const bool hydro =
      cfg.experiment == ExperimentKind::kHydroHyperbolic || cfg.experiment == ExperimentKind::kHydroDiffusive;
  const bool complex_modes = cfg.experiment == ExperimentKind::kFluctsDiffusive;
  const std::vector<int> modes = cfg.resolved_modes(complex_modes);
  const Dynamics dynamics(cfg.n, cfg.scheme);
  const FieldProjector projector(cfg.n, max_abs_mode(modes));
  const SampleKind kind =
      hydro ? SampleKind::kEmpirical : (complex_modes ? SampleKind::kFluctuationMode : SampleKind::kFluctuation);

  std::vector<ReplicaOutput> replicas(cfg.replicas);
  parallel_for(cfg.replicas, threads, [&](std::size_t i) {
    Stream rng = make_stream(cfg.seed, i, StreamDomain::kParticle);
    OccupancyState state = initial_state(cfg, cfg.n, hydro, rng);
    const std::size_t particles = state.particle_count();
    EventClock clock(rng);
    ReplicaOutput& out = replicas[i];
    out.rows.reserve(cfg.times.size() * modes.size());

    auto emit = [&](double t, int k, double re, double im) {
      out.rows.push_back(FieldSample{experiment, cfg.n, cfg.beta(), t, k, kind, re, im, i, cfg.seed});
    };
    const auto summary = dynamics.run_until(state, clock, cfg.times.back(), cfg.times,
                                            [&](std::size_t, double t, const OccupancyState& s) {
                                              if (complex_modes) {
                                                const ComplexModes y = projector.fluctuation_modes(s, cfg.rho);
                                                for (int k : modes) emit(t, k, y[k].real(), y[k].imag());
                                              } else {
                                                const PsiCoefficients a = hydro ? projector.empirical_psi(s)
                                                                                : projector.fluctuation_psi(s, cfg.rho);
                                                for (int k : modes) emit(t, k, a[k], 0.0);
                                              }
                                            });
    out.events = summary.events;
    out.conserved = state.particle_count() == particles;
  });
  return fold(replicas);
}

RunOutput simulate_boundary(const ExperimentConfig& cfg, unsigned threads) {
  const std::string experiment(to_string(cfg.experiment));
  std::vector<ReplicaOutput> replicas(cfg.ladder.size() * cfg.replicas);
  std::vector<Dynamics> dynamics;
  for (std::size_t n : cfg.ladder) dynamics.emplace_back(n, cfg.scheme);

  parallel_for(replicas.size(), threads, [&](std::size_t job) {
    const std::size_t rung = job / cfg.replicas;
    const std::size_t i = job % cfg.replicas;
    const std::size_t n = cfg.ladder[rung];
    const std::size_t r = cfg.boundary_last ? n : 2;
    // Replica i of rung j draws from stream j * 2^32 + i.
    Stream rng = make_stream(cfg.seed, (static_cast<std::uint64_t>(rung) << 32) | i, StreamDomain::kParticle);
    OccupancyState state = initial_state(cfg, n, false, rng);
    const std::size_t particles = state.particle_count();
    EventClock clock(rng);
    ReplicaOutput& out = replicas[job];
    const double value = boundary_sup_functional(dynamics[rung], state, clock, cfg.horizon, r, &out.events);
    out.conserved = state.particle_count() == particles;
    out.rows.push_back(FieldSample{experiment, n, cfg.beta(), cfg.horizon, static_cast<int>(r), SampleKind::kBoundary,
                                   value, 0.0, i, cfg.seed});
  });
  return fold(replicas);
}

RunOutput simulate_spde(const ExperimentConfig& cfg) {
  const Rates limit = cfg.scheme.limit();
  const std::vector<int> modes = cfg.resolved_modes(true);
  const SpdeParams params = SpdeParams::from_rates(limit.c, cfg.scheme.gamma(), max_abs_mode(modes), cfg.rho);
  RunOutput out;
  spde_monte_carlo(params, cfg.times, modes, cfg.spde_paths, cfg.spde_substeps, cfg.seed, &out.samples,
                   std::min(cfg.spde_paths, cfg.csv_replica_limit));
  for (auto& row : out.samples) row.experiment = to_string(cfg.experiment);
  return out;
}

}  // namespace

double boundary_sup_functional(const Dynamics& dynamics, OccupancyState& state, EventClock& clock, double horizon,
                               std::size_t r, std::uint64_t* events) {
  const double start = clock.time;
  double diff = static_cast<double>(state(1)) - static_cast<double>(state(r));
  double integral = 0.0;
  double sup = 0.0;
  double last = start;
  const std::uint64_t executed =
      dynamics.advance_to(state, clock, start + horizon, [&](double before, double after, const OccupancyState& s) {
        integral += diff * (after - before);
        sup = std::max(sup, std::abs(integral));
        diff = static_cast<double>(s(1)) - static_cast<double>(s(r));
        last = after;
      });
  integral += diff * (start + horizon - last);
  sup = std::max(sup, std::abs(integral));
  if (events != nullptr) *events = executed;
  return static_cast<double>(dynamics.n()) * sup * sup;
}

RunOutput simulate(const ExperimentConfig& cfg, unsigned threads) {
  switch (cfg.experiment) {
    case ExperimentKind::kOracleValidate:
      return RunOutput{};
    case ExperimentKind::kSpdeReference:
      return simulate_spde(cfg);
    case ExperimentKind::kBoundaryDecay:
      return simulate_boundary(cfg, threads);
    default:
      return simulate_fields(cfg, threads);
  }
}

}  // namespace rlab::harness
