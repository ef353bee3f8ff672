#include "rlab/harness/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "rlab/harness/experiments.hpp"
#include "rlab/harness/io.hpp"
#include "rlab/harness/parallel.hpp"

namespace rlab::harness {

namespace {

struct Options {
  std::string config;
  std::string out = ".";
  std::string samples;
  std::string report;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
  std::optional<std::size_t> replicas;
  bool quiet = false;
};

int exit_code(Status status) {
  switch (status) {
    case Status::kPass:
    case Status::kInfo:
      return kExitOk;
    case Status::kFail:
      return kExitToleranceFailed;
    case Status::kInconclusive:
      return kExitInconclusive;
  }
  return kExitInternal;
}

ExperimentConfig resolve_config(const Options& opt, std::optional<ExperimentKind> fallback) {
  ExperimentConfig cfg;
  if (!opt.config.empty()) {
    cfg = load_config(opt.config);
  } else if (fallback) {
    cfg = default_config(*fallback);
  } else {
    throw CLI::RequiredError("--config");
  }
  // Overrides go back through the parser so they are validated like file input.
  nlohmann::json doc = to_json(cfg);
  if (opt.seed) doc["seed"] = *opt.seed;
  if (opt.replicas) doc["replicas"] = *opt.replicas;
  if (opt.replicas && cfg.experiment == ExperimentKind::kSpdeReference) doc["spde_paths"] = *opt.replicas;
  cfg = parse_config(doc);
  if (fallback && cfg.experiment != *fallback) {
    throw ConfigError("this subcommand needs a '" + std::string(to_string(*fallback)) + "' config");
  }
  if (opt.threads) cfg.threads = *opt.threads;
  return cfg;
}

std::filesystem::path output_dir(const Options& opt) {
  std::filesystem::path dir(opt.out);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (!std::filesystem::is_directory(dir)) throw OutputError("cannot create output directory '" + opt.out + "'");
  return dir;
}

int finish(const ComparisonReport& report, const std::filesystem::path& report_path, bool quiet) {
  for (const auto& c : report.comparisons) {
    if (!quiet || c.status == Status::kFail) std::cout << summary_line(report.experiment, c) << '\n';
  }
  write_json(report_path.string(), to_json(report));
  const Status overall = report.overall();
  std::cout << report.experiment << ": " << to_string(overall) << " (" << report.comparisons.size()
            << " comparisons), report " << report_path.string() << '\n';
  return exit_code(overall);
}

int run_simulate(const Options& opt, std::optional<ExperimentKind> kind, const std::string& stem) {
  const ExperimentConfig cfg = resolve_config(opt, kind);
  const auto dir = output_dir(opt);
  const unsigned threads = resolve_threads(cfg.threads == 0 ? std::nullopt : std::optional(cfg.threads));
  const ExperimentResult result = run_experiment(cfg, threads);
  if (cfg.experiment != ExperimentKind::kOracleValidate) {
    std::vector<FieldSample> rows;
    for (const auto& s : result.run.samples) {
      if (s.replica < cfg.csv_replica_limit) rows.push_back(s);
    }
    write_samples_csv((dir / (stem + "samples.csv")).string(), rows);
  }
  return finish(result.report, dir / (stem + "report.json"), opt.quiet);
}

int run_compare(const Options& opt) {
  const ExperimentConfig cfg = resolve_config(opt, std::nullopt);
  const auto dir = output_dir(opt);
  std::vector<FieldSample> samples;
  try {
    samples = read_samples_csv(opt.samples);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("cannot use samples: ") + e.what());
  }
  return finish(evaluate(cfg, samples, Telemetry{}), dir / "report.json", opt.quiet);
}

int run_report(const Options& opt) {
  std::ifstream in(opt.report);
  if (!in) throw ConfigError("cannot read report '" + opt.report + "'");
  ComparisonReport report;
  try {
    report = report_from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("report is not valid JSON: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  for (const auto& c : report.comparisons) {
    if (!opt.quiet || c.status == Status::kFail) std::cout << summary_line(report.experiment, c) << '\n';
  }
  std::cout << report.experiment << ": " << to_string(report.overall()) << " (" << report.comparisons.size()
            << " comparisons)\n";
  return exit_code(report.overall());
}

}  // namespace

int cli_main(int argc, char** argv) {
  CLI::App app{"Generalized Rudvalis shuffle: simulation, exact oracle and limit comparisons"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* cmd, bool config_required) {
    auto* config = cmd->add_option("--config", opt.config, "Experiment config (JSON)")->check(CLI::ExistingFile);
    if (config_required) config->required();
    cmd->add_option("--out", opt.out, "Output directory")->capture_default_str();
    cmd->add_option("--seed", opt.seed, "Override the config seed");
    cmd->add_option("--threads", opt.threads, "Worker threads (default: RLAB_THREADS, then all cores)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--replicas", opt.replicas, "Override the replica count")->check(CLI::PositiveNumber);
    cmd->add_flag("--quiet", opt.quiet, "Print only failing comparisons and the verdict");
  };

  auto* simulate_cmd = app.add_subcommand("simulate", "Run an experiment; write samples.csv and report.json");
  add_common(simulate_cmd, true);
  auto* oracle_cmd = app.add_subcommand("oracle", "Exact-oracle validation; write oracle_report.json");
  add_common(oracle_cmd, false);
  auto* spde_cmd = app.add_subcommand("spde", "SPDE reference run; write spde_samples.csv and spde_report.json");
  add_common(spde_cmd, false);
  auto* compare_cmd = app.add_subcommand("compare", "Rebuild report.json from a config and a samples CSV");
  add_common(compare_cmd, true);
  compare_cmd->add_option("--samples", opt.samples, "Samples CSV")->required()->check(CLI::ExistingFile);
  auto* report_cmd = app.add_subcommand("report", "Print the comparisons of a report.json");
  report_cmd->add_option("--report", opt.report, "Report JSON")->required()->check(CLI::ExistingFile);
  report_cmd->add_flag("--quiet", opt.quiet, "Print only failing comparisons and the verdict");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (simulate_cmd->parsed()) return run_simulate(opt, std::nullopt, "");
    if (oracle_cmd->parsed()) {
      const ExperimentConfig cfg = resolve_config(opt, ExperimentKind::kOracleValidate);
      const auto dir = output_dir(opt);
      return finish(run_oracle_validate(cfg), dir / "oracle_report.json", opt.quiet);
    }
    if (spde_cmd->parsed()) return run_simulate(opt, ExperimentKind::kSpdeReference, "spde_");
    if (compare_cmd->parsed()) return run_compare(opt);
    if (report_cmd->parsed()) return run_report(opt);
  } catch (const CLI::RequiredError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const OutputError& e) {
    std::cerr << "output error: " << e.what() << '\n';
    return kExitOutput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitUsage;
}

}  // namespace rlab::harness
