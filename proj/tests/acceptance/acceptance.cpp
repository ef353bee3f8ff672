// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.
// Run sizes and tolerances are fixed here rather than read from configs/ so
// that editing a shipped config cannot weaken the suite.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/core.h>

#include "rlab/harness/config.hpp"
#include "rlab/harness/experiments.hpp"
#include "rlab/harness/io.hpp"
#include "rlab/harness/parallel.hpp"

namespace {

using nlohmann::json;
using namespace rlab;
using namespace rlab::harness;

constexpr double kPi = std::numbers::pi;
constexpr double kZ = 4.0;
constexpr double kExact = 1e-12;

struct Verdict {
  bool pass = true;
  std::vector<std::string> notes;

  void require(bool ok, std::string note) {
    if (!ok) {
      pass = false;
      notes.push_back(std::move(note));
    }
  }
};

unsigned g_threads = 1;
std::uint64_t g_trajectories = 0;
std::uint64_t g_violations = 0;

ExperimentResult run(const json& doc) {
  ExperimentResult result = run_experiment(parse_config(doc), g_threads);
  if (result.run.telemetry.recorded && result.report.experiment != "oracle-validate") {
    g_trajectories += result.run.telemetry.trajectories;
    g_violations += result.run.telemetry.conservation_violations;
  }
  return result;
}

// Every scored comparison must pass; failing lines are kept for the log.
void require_report(Verdict& v, const ComparisonReport& report) {
  for (const auto& c : report.comparisons) {
    if (c.status == Status::kFail || c.status == Status::kInconclusive) {
      v.require(false, summary_line(report.experiment, c));
    }
  }
}

std::vector<const Comparison*> select(const ComparisonReport& report, const std::string& name) {
  std::vector<const Comparison*> out;
  for (const auto& c : report.comparisons) {
    if (c.name == name) out.push_back(&c);
  }
  return out;
}

void check_target(Verdict& v, const Comparison& c, double expected, double tol = 1e-12) {
  v.require(std::abs(c.target - expected) <= tol,
            fmt::format("{} t={} k={}: target {} differs from closed form {}", c.name, c.t, c.k, c.target, expected));
}

Verdict oracle_exactness() {
  Verdict v;
  const ComparisonReport report = run_oracle_validate(parse_config(json{
      {"experiment", "oracle-validate"},
      {"tolerance", {{"exact", kExact}}},
      {"oracle",
       {{"sizes", {4, 5, 6, 7, 8, 9, 10}},
        {"densities", {0.25, 0.5, 0.9}},
        {"presets", {"rudvalis", "symmetric", "weak-asym"}},
        {"weak_gamma", 1.0}}}}));
  require_report(v, report);
  v.require(report.comparisons.size() > 200, "oracle grid unexpectedly small");
  double worst = 0.0;
  for (const auto& c : report.comparisons) worst = std::max(worst, c.statistic);
  v.notes.push_back(fmt::format("{} identities, largest residual {:.3g}", report.comparisons.size(), worst));
  return v;
}

json hydro_profile() { return {{"fourier", {{"0", 0.5}, {"-1", -std::sqrt(2.0) / 8.0}}}}; }

// Rotating 1/2 + sin(2 pi u)/4 by t gives coefficients -sqrt(2)/8 cos(2 pi t)
// on psi_{-1} and sqrt(2)/8 sin(2 pi t) on psi_1.
double rotated_coefficient(int k, double t) {
  if (k == 0) return 0.5;
  if (k == -1) return -std::sqrt(2.0) / 8.0 * std::cos(2 * kPi * t);
  if (k == 1) return std::sqrt(2.0) / 8.0 * std::sin(2 * kPi * t);
  return 0.0;
}

Verdict hyperbolic_hydro() {
  Verdict v;
  const ExperimentResult r = run(json{{"experiment", "hydro-hyperbolic"},
                                      {"n", 2048},
                                      {"scheme", {{"preset", "rudvalis"}}},
                                      {"profile", hydro_profile()},
                                      {"K", 4},
                                      {"times", {0.0, 0.25, 0.5}},
                                      {"replicas", 64},
                                      {"seed", 1},
                                      {"tolerance", {{"z", kZ}, {"max_se", 0.01}}}});
  require_report(v, r.report);
  std::size_t scored = 0;
  for (const Comparison* c : select(r.report, "mean <pi_t, psi_k>")) {
    check_target(v, *c, rotated_coefficient(c->k, c->t));
    v.require(c->std_error <= 0.01, fmt::format("SE {} above 0.01 at t={} k={}", c->std_error, c->t, c->k));
    ++scored;
  }
  v.require(scored == 3 * 9, fmt::format("expected 27 mode comparisons, got {}", scored));
  return v;
}

Verdict kappa_zero() {
  Verdict v;
  const ExperimentResult r = run(json{{"experiment", "hydro-hyperbolic"},
                                      {"n", 2048},
                                      {"scheme", {{"a", 0.25}, {"b", 0.25}, {"c", 0.5}, {"d", 0.0}}},
                                      {"profile", hydro_profile()},
                                      {"K", 4},
                                      {"times", {0.0, 0.25, 0.5, 0.75, 1.0}},
                                      {"replicas", 64},
                                      {"seed", 2},
                                      {"tolerance", {{"z", kZ}, {"max_se", 0.01}}}});
  require_report(v, r.report);
  for (const Comparison* c : select(r.report, "mean <pi_t, psi_k>")) check_target(v, *c, rotated_coefficient(c->k, 0));
  return v;
}

Verdict hyperbolic_fluctuations() {
  Verdict v;
  const ExperimentResult r = run(json{{"experiment", "flucts-hyperbolic"},
                                      {"n", 1024},
                                      {"scheme", {{"preset", "rudvalis"}}},
                                      {"rho", 0.5},
                                      {"K", 1},
                                      {"modes", {1}},
                                      {"times", {0.0, 0.1, 0.25, 0.4}},
                                      {"replicas", 5000},
                                      {"seed", 4},
                                      {"tolerance", {{"z", kZ}}}});
  require_report(v, r.report);
  const auto initial = select(r.report, "Var Y_0(psi_k)");
  const auto lagged = select(r.report, "E[Y_t(psi_k) Y_0(psi_k)]");
  v.require(initial.size() == 1 && lagged.size() == 3, "missing fluctuation comparisons");
  for (const Comparison* c : initial) check_target(v, *c, 0.25);
  for (const Comparison* c : lagged) check_target(v, *c, 0.25 * std::cos(2 * kPi * c->t));
  return v;
}

Verdict diffusive_fluctuations() {
  Verdict v;
  auto base = [](json scheme, std::uint64_t seed) {
    return json{{"experiment", "flucts-diffusive"},
                {"n", 512},
                {"scheme", scheme},
                {"rho", 0.5},
                {"K", 1},
                {"modes", {1}},
                {"times", {0.0, 0.02, 0.05}},
                {"replicas", 5000},
                {"seed", seed},
                {"spde_paths", 100000},
                {"tolerance", {{"z", kZ}}}};
  };
  const ExperimentResult sym = run(base(json{{"preset", "symmetric"}}, 5));
  require_report(v, sym.report);
  v.require(sym.report.metadata.value("target_confirmed", false), "symmetric: SPDE oracle did not confirm the target");
  for (const Comparison* c : select(sym.report, "Re E[Y_t(k) conj Y_0(k)]")) {
    check_target(v, *c, 0.25 * std::exp(-kPi * kPi * c->t));
  }

  const ExperimentResult weak = run(base(json{{"preset", "weak-asym"}, {"gamma", 1.0}, {"c", 0.25}, {"d", 0.0}}, 6));
  require_report(v, weak.report);
  v.require(weak.report.metadata.value("target_confirmed", false), "weak-asym: SPDE oracle did not confirm the target");
  const auto phases = select(weak.report, "phase of E[Y_t(k) conj Y_0(k)]");
  v.require(phases.size() == 2, "weak-asym: expected phase comparisons at t=0.02 and 0.05");
  for (const Comparison* c : phases) check_target(v, *c, 2 * kPi * c->t, 1e-9);
  return v;
}

Verdict spde_exactness_check() {
  Verdict v;
  for (const auto& [nu, v_drift] : {std::pair{0.25, 0.0}, std::pair{0.25, 1.0}, std::pair{1.0, -3.0}}) {
    SpdeParams params;
    params.viscosity = nu;
    params.drift = v_drift;
    params.noise = std::sqrt(2 * nu);
    params.cutoff = 8;
    params.rho = 0.5;
    const SpdeExactness e = spde_exactness(params, 0.2, 128, 2000, 99);
    v.require(e.modulus <= kExact, fmt::format("nu={} v={}: modulus residual {}", nu, v_drift, e.modulus));
    v.require(e.composition <= kExact, fmt::format("nu={} v={}: composition residual {}", nu, v_drift, e.composition));
    v.require(e.heat <= kExact, fmt::format("nu={} v={}: heat residual {}", nu, v_drift, e.heat));
  }
  return v;
}

Verdict boundary_decay() {
  Verdict v;
  const ExperimentResult r = run(json{{"experiment", "boundary-decay"},
                                      {"scheme", {{"preset", "symmetric"}}},
                                      {"rho", 0.5},
                                      {"ladder", {64, 128, 256}},
                                      {"boundary_site", "n"},
                                      {"horizon", 1.0},
                                      {"replicas", 500},
                                      {"seed", 7}});
  require_report(v, r.report);
  std::vector<double> values;
  for (const auto& c : r.report.comparisons) {
    if (c.rule == Rule::kInfo) values.push_back(c.statistic);
  }
  v.require(values.size() == 3, "expected one estimate per ladder rung");
  for (std::size_t i = 1; i < values.size(); ++i) {
    v.require(values[i] < values[i - 1], fmt::format("rung {} does not decrease", i));
  }
  std::string ladder;
  for (double x : values) ladder += fmt::format(" {:.4g}", x);
  v.notes.push_back("estimates:" + ladder);
  return v;
}

std::string csv_of(const ExperimentConfig& cfg, unsigned threads) {
  const RunOutput out = simulate(cfg, threads);
  g_trajectories += out.telemetry.trajectories;
  g_violations += out.telemetry.conservation_violations;
  std::ostringstream buffer;
  write_samples_csv(buffer, out.samples);
  return buffer.str();
}

Verdict determinism_and_conservation() {
  Verdict v;
  const std::vector<json> docs{
      json{{"experiment", "flucts-hyperbolic"}, {"n", 256}, {"K", 2}, {"modes", {-2, -1, 1, 2}},
           {"times", {0.0, 0.1, 0.3}}, {"replicas", 400}, {"seed", 21}},
      json{{"experiment", "hydro-diffusive"}, {"n", 128}, {"K", 4}, {"times", {0.0, 0.01, 0.02}},
           {"replicas", 40}, {"seed", 22}, {"profile", hydro_profile()}},
      json{{"experiment", "boundary-decay"}, {"ladder", {16, 32}}, {"replicas", 60}, {"seed", 23}},
  };
  for (const json& doc : docs) {
    const ExperimentConfig cfg = parse_config(doc);
    const std::string reference = csv_of(cfg, 1);
    for (unsigned threads : {1u, 2u, 3u, 8u}) {
      v.require(csv_of(cfg, threads) == reference,
                fmt::format("{}: CSV differs at {} threads", doc["experiment"].get<std::string>(), threads));
    }
  }
  v.require(g_trajectories > 0, "no trajectories recorded");
  v.require(g_violations == 0, fmt::format("{} trajectories changed their particle count", g_violations));
  v.notes.push_back(fmt::format("{} trajectories checked for conservation", g_trajectories));
  return v;
}

}  // namespace

int main() {
  g_threads = resolve_threads(std::nullopt);
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"oracle exactness", oracle_exactness},
      {"hyperbolic hydrodynamics", hyperbolic_hydro},
      {"kappa=0 triviality", kappa_zero},
      {"hyperbolic fluctuations", hyperbolic_fluctuations},
      {"diffusive fluctuations", diffusive_fluctuations},
      {"spde exactness", spde_exactness_check},
      {"boundary decay", boundary_decay},
      // Last, so conservation covers every particle run above.
      {"determinism & conservation", determinism_and_conservation},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict verdict;
    try {
      verdict = check();
    } catch (const std::exception& e) {
      verdict.require(false, std::string("exception: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %s (%.1fs)\n", verdict.pass ? "PASS" : "FAIL", name.c_str(), seconds);
    for (const auto& note : verdict.notes) std::printf("    %s\n", note.c_str());
    std::fflush(stdout);
    if (!verdict.pass) ++failures;
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
