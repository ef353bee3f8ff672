#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "rlab/fourier.hpp"
#include "rlab/harness/experiments.hpp"
#include "rlab/oracle.hpp"
#include "rlab/rng.hpp"

namespace rlab::harness {

namespace {

double max_abs_diff(std::span<const double> x, std::span<const double> y) {
  double worst = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) worst = std::max(worst, std::abs(x[i] - y[i]));
  return worst;
}

}  // namespace

ComparisonReport run_oracle_validate(const ExperimentConfig& cfg) {
  if (cfg.experiment != ExperimentKind::kOracleValidate) throw ConfigError("run_oracle_validate needs oracle-validate");
  ComparisonReport report;
  report.experiment = to_string(cfg.experiment);
  report.config = to_json(cfg);
  const double tol = cfg.tolerance.exact;
  const OracleGrid& grid = cfg.oracle;
  Stream rng = make_stream(cfg.seed, 0, StreamDomain::kOracleCheck);

  for (const std::string& preset : grid.presets) {
    const RateScheme scheme = preset_scheme(preset, grid.weak_gamma);
    for (int n : grid.sizes) {
      const Rates rates = scheme.at(n);
      const oracle::GeneratorMatrix q = oracle::build_generator(n, rates);
      const auto nn = static_cast<std::size_t>(n);
      auto add = [&](std::string name, std::string label, double residual) {
        report.comparisons.push_back(exact_comparison(std::move(name), preset + (label.empty() ? "" : ", " + label),
                                                      nn, residual, tol));
      };

      add("generator row sums", "", oracle::row_sum_residual(q));
      for (double rho : grid.densities) {
        add("nu_rho invariance", fmt::format("rho={}", rho), oracle::check_invariance(q, oracle::bernoulli_measure(n, rho)));
      }
      double hyperplane = 0.0;
      for (int l = 0; l <= n; ++l) {
        hyperplane = std::max(hyperplane, oracle::check_invariance(q, oracle::hyperplane_measure(n, l)));
      }
      add("hyperplane invariance", "all particle counts", hyperplane);

      double coordinates = 0.0;
      for (int x = 1; x <= n; ++x) {
        coordinates = std::max(coordinates, max_abs_diff(oracle::coordinate_formula(n, rates, x),
                                                         q.apply(oracle::coordinate_function(n, x))));
      }
      add("coordinate generator formulas", "all sites", coordinates);

      double drift = 0.0;
      double qv = 0.0;
      const double speedup = std::pow(static_cast<double>(n), scheme.beta());
      for (int k = -grid.max_mode; k <= grid.max_mode; ++k) {
        const std::vector<double> f = psi_grid(k, nn);
        const oracle::StateFunction pairing = oracle::empirical_pairing(n, f);
        drift = std::max(drift, max_abs_diff(oracle::drift_closed_form(n, rates, f), q.apply(pairing)));
        oracle::StateFunction gamma = oracle::carre_du_champ(q, pairing);
        for (double& g : gamma) g *= speedup;
        qv = std::max(qv, max_abs_diff(oracle::qv_integrand_closed_form(n, rates, f, scheme.beta()), gamma));
      }
      const std::string modes = fmt::format("|k|<={}", grid.max_mode);
      add("drift of <pi, psi_k>", modes, drift);
      add("carre du champ vs quadratic-variation integrand", modes, qv);

      for (double rho : grid.densities) {
        const oracle::MeasureVector nu = oracle::bernoulli_measure(n, rho);
        double dirichlet = 0.0;
        for (int i = 0; i < grid.random_functions; ++i) {
          std::vector<double> h(q.size());
          for (double& v : h) v = 2.0 * rng.uniform() - 1.0;
          dirichlet = std::max(dirichlet, std::abs(oracle::generator_quadratic_form(q, h, nu) -
                                                   oracle::dirichlet_form_quadratic(h, rates, n, rho)));
        }
        add("Dirichlet symmetrization", fmt::format("rho={}, {} random h", rho, grid.random_functions), dirichlet);
      }
    }
  }
  return report;
}

}  // namespace rlab::harness
