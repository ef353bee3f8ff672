#include "rlab/harness/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>

namespace rlab::harness {

using nlohmann::json;

namespace {

constexpr std::array kExperimentNames{
    std::pair{ExperimentKind::kHydroHyperbolic, "hydro-hyperbolic"},
    std::pair{ExperimentKind::kHydroDiffusive, "hydro-diffusive"},
    std::pair{ExperimentKind::kFluctsHyperbolic, "flucts-hyperbolic"},
    std::pair{ExperimentKind::kFluctsDiffusive, "flucts-diffusive"},
    std::pair{ExperimentKind::kBoundaryDecay, "boundary-decay"},
    std::pair{ExperimentKind::kStationarity, "stationarity"},
    std::pair{ExperimentKind::kOracleValidate, "oracle-validate"},
    std::pair{ExperimentKind::kSpdeReference, "spde-reference"},
};

// 1/2 + sin(2 pi u)/4 in the psi basis (psi_{-1} = -sqrt(2) sin(2 pi u)).
DensityProfile sine_profile() { return DensityProfile::fourier({{0, 0.5}, {-1, -0.25 / std::numbers::sqrt2}}); }

/// 0 = unconstrained.
int required_beta(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::kHydroHyperbolic:
    case ExperimentKind::kFluctsHyperbolic:
      return 1;
    case ExperimentKind::kHydroDiffusive:
    case ExperimentKind::kFluctsDiffusive:
    case ExperimentKind::kBoundaryDecay:
    case ExperimentKind::kSpdeReference:
      return 2;
    default:
      return 0;
  }
}

RateScheme parse_scheme(const json& spec) {
  if (!spec.is_object()) throw ConfigError("scheme must be an object");
  static const std::set<std::string> allowed{"preset", "mode", "a", "b", "c", "d", "gamma", "beta"};
  for (const auto& [key, _] : spec.items()) {
    if (!allowed.contains(key)) throw ConfigError("unknown scheme key '" + key + "'");
  }
  const std::string preset = spec.value("preset", std::string{});
  std::string mode = spec.value("mode", std::string{});
  const bool explicit_rates = spec.contains("a") || spec.contains("b");
  try {
    RateScheme scheme = RateScheme::rudvalis();
    if (mode.empty() && !explicit_rates && !preset.empty()) {
      scheme = preset_scheme(preset, spec.value("gamma", 1.0), spec.value("c", 0.25), spec.value("d", 0.0));
    } else {
      if (mode.empty()) mode = explicit_rates ? "fixed" : "weakly-asymmetric";
      if (mode == "fixed") {
        for (const char* key : {"a", "b", "c", "d"}) {
          if (!spec.contains(key)) throw ConfigError(std::string("fixed scheme needs rate '") + key + "'");
        }
        scheme = RateScheme::fixed(spec.at("a").get<double>(), spec.at("b").get<double>(), spec.at("c").get<double>(),
                                   spec.at("d").get<double>(), 1);
      } else if (mode == "weakly-asymmetric") {
        scheme = RateScheme::weakly_asymmetric(spec.at("c").get<double>(), spec.at("gamma").get<double>(),
                                               spec.value("d", 0.0));
      } else {
        throw ConfigError("unknown scheme mode '" + mode + "'");
      }
      scheme = scheme.with_preset_name(preset);
    }
    if (spec.contains("beta")) scheme = scheme.with_beta(spec.at("beta").get<int>());
    return scheme;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("invalid scheme: ") + e.what());
  }
}

json scheme_to_json(const RateScheme& scheme) {
  const Rates r = scheme.limit();
  json out{{"preset", scheme.preset()}, {"beta", scheme.beta()}};
  if (scheme.mode() == RateMode::kFixed) {
    out["mode"] = "fixed";
    out["a"] = r.a;
    out["b"] = r.b;
    out["c"] = r.c;
    out["d"] = r.d;
  } else {
    out["mode"] = "weakly-asymmetric";
    out["c"] = r.c;
    out["d"] = r.d;
    out["gamma"] = scheme.gamma();
  }
  return out;
}

DensityProfile parse_profile(const json& spec) {
  if (!spec.is_object() || spec.size() != 1) throw ConfigError("profile must be {\"constant\": rho} or {\"fourier\": {...}}");
  DensityProfile profile = DensityProfile::constant(0.5);
  if (spec.contains("constant")) {
    profile = DensityProfile::constant(spec.at("constant").get<double>());
  } else if (spec.contains("fourier")) {
    std::map<int, double> coeffs;
    for (const auto& [key, value] : spec.at("fourier").items()) {
      std::size_t used = 0;
      int k = 0;
      try {
        k = std::stoi(key, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != key.size()) throw ConfigError("fourier profile keys must be integers, got '" + key + "'");
      coeffs[k] = value.get<double>();
    }
    profile = DensityProfile::fourier(std::move(coeffs));
  } else {
    throw ConfigError("profile must be {\"constant\": rho} or {\"fourier\": {...}}");
  }
  constexpr int kProbe = 4096;
  for (int i = 0; i < kProbe; ++i) {
    const double v = profile(static_cast<double>(i) / kProbe);
    if (!(v >= 0.0 && v <= 1.0)) throw ConfigError("profile leaves [0,1]");
  }
  return profile;
}

json profile_to_json(const DensityProfile& profile) {
  if (profile.is_constant()) {
    const auto& c = profile.coefficients();
    return json{{"constant", c.empty() ? 0.0 : c.begin()->second}};
  }
  json coeffs = json::object();
  for (const auto& [k, v] : profile.coefficients()) coeffs[std::to_string(k)] = v;
  return json{{"fourier", coeffs}};
}

template <class T>
std::vector<T> read_list(const json& doc, const char* key) {
  if (!doc.at(key).is_array()) throw ConfigError(std::string(key) + " must be an array");
  return doc.at(key).get<std::vector<T>>();
}

void validate(const ExperimentConfig& cfg) {
  const bool needs_deck = cfg.experiment != ExperimentKind::kOracleValidate &&
                          cfg.experiment != ExperimentKind::kSpdeReference &&
                          cfg.experiment != ExperimentKind::kBoundaryDecay;
  if (needs_deck) {
    if (cfg.n < 4) throw ConfigError("n must be at least 4");
    if (4 * static_cast<std::size_t>(cfg.cutoff) > cfg.n) throw ConfigError("K must satisfy K <= n/4");
    try {
      cfg.scheme.at(static_cast<int>(cfg.n));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("invalid scheme at n: ") + e.what());
    }
  }
  if (cfg.cutoff < 0) throw ConfigError("K must be nonnegative");
  if (!(cfg.rho >= 0.0 && cfg.rho <= 1.0)) throw ConfigError("rho must lie in [0,1]");
  if (cfg.replicas < 2 && cfg.experiment != ExperimentKind::kOracleValidate) {
    throw ConfigError("at least two replicas are required");
  }
  if (cfg.times.empty()) throw ConfigError("times must not be empty");
  for (std::size_t i = 0; i < cfg.times.size(); ++i) {
    if (!(cfg.times[i] >= 0.0)) throw ConfigError("times must be nonnegative");
    if (i > 0 && !(cfg.times[i] > cfg.times[i - 1])) throw ConfigError("times must be strictly increasing");
  }
  for (int k : cfg.modes) {
    if (std::abs(k) > cfg.cutoff) throw ConfigError("mode " + std::to_string(k) + " exceeds K");
  }
  if (!(cfg.tolerance.z > 0.0) || !(cfg.tolerance.exact >= 0.0) || !(cfg.tolerance.max_std_error > 0.0)) {
    throw ConfigError("tolerances must be positive");
  }

  const int beta = required_beta(cfg.experiment);
  if (beta != 0 && cfg.scheme.beta() != beta) {
    throw ConfigError(std::string(to_string(cfg.experiment)) + " requires beta = " + std::to_string(beta));
  }
  const bool diffusive = cfg.experiment == ExperimentKind::kHydroDiffusive ||
                         cfg.experiment == ExperimentKind::kFluctsDiffusive ||
                         cfg.experiment == ExperimentKind::kSpdeReference;
  if (diffusive) {
    const Rates limit = cfg.scheme.limit();
    if (!(limit.c > 0.0)) throw ConfigError("diffusive experiments need c > 0");
    if (cfg.scheme.mode() == RateMode::kFixed && std::abs(cfg.scheme.kappa()) > 1e-15) {
      throw ConfigError("diffusive experiments need a_n + b_n - c_n = gamma/n; use a balanced fixed scheme or weak-asym");
    }
  }
  if (cfg.experiment == ExperimentKind::kBoundaryDecay) {
    if (cfg.ladder.size() < 2) throw ConfigError("boundary-decay needs a ladder of at least two sizes");
    if (!(cfg.horizon > 0.0)) throw ConfigError("horizon must be positive");
    for (std::size_t i = 0; i < cfg.ladder.size(); ++i) {
      if (cfg.ladder[i] < 4) throw ConfigError("ladder sizes must be at least 4");
      if (i > 0 && cfg.ladder[i] <= cfg.ladder[i - 1]) throw ConfigError("ladder must be increasing");
      Rates r;
      try {
        r = cfg.scheme.at(static_cast<int>(cfg.ladder[i]));
      } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("invalid scheme at ladder size: ") + e.what());
      }
      if (cfg.boundary_last && !(r.b > 0.0)) throw ConfigError("boundary r = n requires b_n > 0");
      if (!cfg.boundary_last && !(r.d > 0.0)) throw ConfigError("boundary r = 2 requires d_n > 0");
    }
  }
  if (cfg.experiment == ExperimentKind::kSpdeReference || cfg.experiment == ExperimentKind::kFluctsDiffusive) {
    if (cfg.spde_paths < 2) throw ConfigError("spde_paths must be at least 2");
    if (cfg.spde_substeps < 1) throw ConfigError("spde_substeps must be positive");
  }
  if (cfg.experiment == ExperimentKind::kOracleValidate) {
    for (int n : cfg.oracle.sizes) {
      if (n < 4 || n > 12) throw ConfigError("oracle sizes must lie in [4, 12]");
    }
    for (double r : cfg.oracle.densities) {
      if (!(r >= 0.0 && r <= 1.0)) throw ConfigError("oracle densities must lie in [0,1]");
    }
    for (const auto& p : cfg.oracle.presets) {
      if (p != "rudvalis" && p != "symmetric" && p != "weak-asym") throw ConfigError("unknown oracle preset " + p);
    }
  }
}

}  // namespace

std::string_view to_string(ExperimentKind kind) noexcept {
  for (const auto& [k, name] : kExperimentNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

ExperimentKind parse_experiment(std::string_view name) {
  for (const auto& [k, text] : kExperimentNames) {
    if (name == text) return k;
  }
  throw ConfigError("unknown experiment '" + std::string(name) + "'");
}

std::vector<int> ExperimentConfig::resolved_modes(bool complex_modes) const {
  std::vector<int> out;
  if (modes.empty()) {
    for (int k = complex_modes ? 1 : -cutoff; k <= cutoff; ++k) out.push_back(k);
    return out;
  }
  for (int k : modes) {
    if (complex_modes && k < 1) throw ConfigError("complex-mode experiments compare k >= 1 only");
    out.push_back(k);
  }
  return out;
}

double ExperimentConfig::horizon_time() const { return times.empty() ? 0.0 : times.back(); }

ExperimentConfig default_config(ExperimentKind kind) {
  ExperimentConfig cfg;
  cfg.experiment = kind;
  switch (kind) {
    case ExperimentKind::kHydroHyperbolic:
      cfg.n = 2048;
      cfg.scheme = RateScheme::rudvalis();
      cfg.profile = sine_profile();
      cfg.cutoff = 4;
      cfg.times = {0.0, 0.25, 0.5};
      cfg.replicas = 64;
      cfg.tolerance.max_std_error = 0.01;
      break;
    case ExperimentKind::kHydroDiffusive:
      cfg.n = 512;
      cfg.scheme = RateScheme::symmetric();
      cfg.profile = sine_profile();
      cfg.cutoff = 4;
      cfg.times = {0.0, 0.01, 0.02, 0.05};
      cfg.replicas = 64;
      cfg.tolerance.max_std_error = 0.02;
      break;
    case ExperimentKind::kFluctsHyperbolic:
      cfg.n = 1024;
      cfg.scheme = RateScheme::rudvalis();
      cfg.rho = 0.5;
      cfg.cutoff = 1;
      cfg.modes = {1};
      cfg.times = {0.0, 0.1, 0.25, 0.4};
      cfg.replicas = 5000;
      break;
    case ExperimentKind::kFluctsDiffusive:
      cfg.n = 512;
      cfg.scheme = RateScheme::symmetric();
      cfg.rho = 0.5;
      cfg.cutoff = 1;
      cfg.modes = {1};
      cfg.times = {0.0, 0.02, 0.05};
      cfg.replicas = 5000;
      break;
    case ExperimentKind::kBoundaryDecay:
      cfg.scheme = RateScheme::symmetric();
      cfg.rho = 0.5;
      cfg.ladder = {64, 128, 256};
      cfg.replicas = 500;
      cfg.horizon = 1.0;
      cfg.times = {1.0};
      cfg.cutoff = 0;
      break;
    case ExperimentKind::kStationarity:
      cfg.n = 256;
      cfg.scheme = RateScheme::fixed(0.25, 0.25, 0.25, 0.25, 1);
      cfg.rho = 0.3;
      cfg.cutoff = 2;
      cfg.modes = {-2, -1, 1, 2};
      cfg.times = {0.0, 0.5, 1.0};
      cfg.replicas = 2000;
      break;
    case ExperimentKind::kOracleValidate:
      cfg.n = 10;
      cfg.replicas = 0;
      cfg.cutoff = 0;
      break;
    case ExperimentKind::kSpdeReference:
      cfg.scheme = RateScheme::weak_asym(1.0, 0.25, 0.0);
      cfg.rho = 0.5;
      cfg.cutoff = 4;
      cfg.modes = {1, 2};
      cfg.times = {0.0, 0.02, 0.05, 0.1};
      cfg.replicas = 100000;
      cfg.spde_paths = 100000;
      cfg.csv_replica_limit = 1000;
      break;
  }
  return cfg;
}

ExperimentConfig parse_config(const json& doc) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  static const std::set<std::string> allowed{
      "experiment", "n",        "beta",    "scheme",    "profile", "rho",         "initial",
      "K",          "modes",    "times",   "replicas",  "seed",    "threads",     "tolerance",
      "ladder",     "boundary_site", "horizon", "spde_paths", "spde_substeps", "csv_replica_limit", "oracle"};
  for (const auto& [key, _] : doc.items()) {
    if (!allowed.contains(key)) throw ConfigError("unknown config key '" + key + "'");
  }
  if (!doc.contains("experiment")) throw ConfigError("config needs an 'experiment'");
  try {
    ExperimentConfig cfg = default_config(parse_experiment(doc.at("experiment").get<std::string>()));
    if (doc.contains("n")) cfg.n = doc.at("n").get<std::size_t>();
    if (doc.contains("scheme")) cfg.scheme = parse_scheme(doc.at("scheme"));
    const int beta = required_beta(cfg.experiment);
    if (doc.contains("beta")) {
      cfg.scheme = cfg.scheme.with_beta(doc.at("beta").get<int>());
    } else if (!(doc.contains("scheme") && doc.at("scheme").contains("beta")) && beta != 0) {
      cfg.scheme = cfg.scheme.with_beta(beta);
    }
    if (doc.contains("profile")) cfg.profile = parse_profile(doc.at("profile"));
    if (doc.contains("rho")) cfg.rho = doc.at("rho").get<double>();
    if (doc.contains("initial")) {
      const auto initial = doc.at("initial").get<std::string>();
      if (initial == "bernoulli") {
        cfg.initial = InitialMeasure::kBernoulli;
      } else if (initial == "hyperplane") {
        cfg.initial = InitialMeasure::kHyperplane;
      } else {
        throw ConfigError("initial must be 'bernoulli' or 'hyperplane'");
      }
    }
    if (doc.contains("K")) cfg.cutoff = doc.at("K").get<int>();
    if (doc.contains("modes")) cfg.modes = read_list<int>(doc, "modes");
    if (doc.contains("times")) cfg.times = read_list<double>(doc, "times");
    if (doc.contains("replicas")) cfg.replicas = doc.at("replicas").get<std::size_t>();
    if (doc.contains("seed")) cfg.seed = doc.at("seed").get<std::uint64_t>();
    if (doc.contains("threads")) cfg.threads = doc.at("threads").get<unsigned>();
    if (doc.contains("tolerance")) {
      const json& tol = doc.at("tolerance");
      for (const auto& [key, _] : tol.items()) {
        if (key != "z" && key != "max_se" && key != "exact") throw ConfigError("unknown tolerance key '" + key + "'");
      }
      if (tol.contains("z")) cfg.tolerance.z = tol.at("z").get<double>();
      if (tol.contains("max_se")) {
        cfg.tolerance.max_std_error =
            tol.at("max_se").is_null() ? std::numeric_limits<double>::infinity() : tol.at("max_se").get<double>();
      }
      if (tol.contains("exact")) cfg.tolerance.exact = tol.at("exact").get<double>();
    }
    if (doc.contains("ladder")) cfg.ladder = read_list<std::size_t>(doc, "ladder");
    if (doc.contains("boundary_site")) {
      const json& site = doc.at("boundary_site");
      if (site.is_string() && site.get<std::string>() == "n") {
        cfg.boundary_last = true;
      } else if (site.is_number_integer() && site.get<int>() == 2) {
        cfg.boundary_last = false;
      } else {
        throw ConfigError("boundary_site must be \"n\" or 2");
      }
    }
    if (doc.contains("horizon")) cfg.horizon = doc.at("horizon").get<double>();
    if (doc.contains("spde_paths")) cfg.spde_paths = doc.at("spde_paths").get<std::size_t>();
    if (doc.contains("spde_substeps")) cfg.spde_substeps = doc.at("spde_substeps").get<int>();
    if (doc.contains("csv_replica_limit")) {
      cfg.csv_replica_limit = doc.at("csv_replica_limit").is_null() ? std::numeric_limits<std::size_t>::max()
                                                                    : doc.at("csv_replica_limit").get<std::size_t>();
    }
    if (doc.contains("oracle")) {
      const json& grid = doc.at("oracle");
      for (const auto& [key, _] : grid.items()) {
        if (key != "sizes" && key != "densities" && key != "presets" && key != "weak_gamma" &&
            key != "random_functions" && key != "max_mode") {
          throw ConfigError("unknown oracle key '" + key + "'");
        }
      }
      if (grid.contains("sizes")) cfg.oracle.sizes = read_list<int>(grid, "sizes");
      if (grid.contains("densities")) cfg.oracle.densities = read_list<double>(grid, "densities");
      if (grid.contains("presets")) cfg.oracle.presets = read_list<std::string>(grid, "presets");
      if (grid.contains("weak_gamma")) cfg.oracle.weak_gamma = grid.at("weak_gamma").get<double>();
      if (grid.contains("random_functions")) cfg.oracle.random_functions = grid.at("random_functions").get<int>();
      if (grid.contains("max_mode")) cfg.oracle.max_mode = grid.at("max_mode").get<int>();
    }
    validate(cfg);
    return cfg;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("invalid config: ") + e.what());
  }
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
  }
  return parse_config(doc);
}

json to_json(const ExperimentConfig& cfg) {
  json out{
      {"experiment", to_string(cfg.experiment)},
      {"n", cfg.n},
      {"beta", cfg.scheme.beta()},
      {"scheme", scheme_to_json(cfg.scheme)},
      {"profile", profile_to_json(cfg.profile)},
      {"rho", cfg.rho},
      {"initial", cfg.initial == InitialMeasure::kBernoulli ? "bernoulli" : "hyperplane"},
      {"K", cfg.cutoff},
      {"modes", cfg.modes},
      {"times", cfg.times},
      {"replicas", cfg.replicas},
      {"seed", cfg.seed},
      {"tolerance",
       {{"z", cfg.tolerance.z},
        {"max_se", std::isfinite(cfg.tolerance.max_std_error) ? json(cfg.tolerance.max_std_error) : json(nullptr)},
        {"exact", cfg.tolerance.exact}}},
      {"ladder", cfg.ladder},
      {"boundary_site", cfg.boundary_last ? json("n") : json(2)},
      {"horizon", cfg.horizon},
      {"spde_paths", cfg.spde_paths},
      {"spde_substeps", cfg.spde_substeps},
      {"csv_replica_limit", cfg.csv_replica_limit == std::numeric_limits<std::size_t>::max()
                                ? json(nullptr)
                                : json(cfg.csv_replica_limit)},
      {"oracle",
       {{"sizes", cfg.oracle.sizes},
        {"densities", cfg.oracle.densities},
        {"presets", cfg.oracle.presets},
        {"weak_gamma", cfg.oracle.weak_gamma},
        {"random_functions", cfg.oracle.random_functions},
        {"max_mode", cfg.oracle.max_mode}}},
  };
  return out;
}

}  // namespace rlab::harness
