#include "rlab/reference.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rlab {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}  // namespace

double transport_solution(const DensityProfile& initial, double theta, double t, double u) {
  double shifted = std::fmod(u + theta * t, 1.0);
  if (shifted < 0.0) shifted += 1.0;
  return initial(shifted);
}

PsiCoefficients transport_fourier(const PsiCoefficients& initial, double theta, double t) {
  PsiCoefficients out(initial.cutoff());
  out[0] = initial[0];
  for (int k = 1; k <= initial.cutoff(); ++k) {
    const double angle = kTwoPi * k * theta * t;
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    out[k] = initial[k] * c - initial[-k] * s;
    out[-k] = initial[k] * s + initial[-k] * c;
  }
  return out;
}

double psi_inner(const PsiCoefficients& f, const PsiCoefficients& g) {
  const int cutoff = std::min(f.cutoff(), g.cutoff());
  double sum = 0.0;
  for (int k = -cutoff; k <= cutoff; ++k) sum += f[k] * g[k];
  return sum;
}

double clt1_covariance(const PsiCoefficients& f, const PsiCoefficients& g, double lag, double rho, double kappa) {
  if (lag < 0.0) throw std::invalid_argument("clt1_covariance needs t >= s");
  return rho * (1.0 - rho) * psi_inner(f, transport_fourier(g, kappa, lag));
}

SpdeParams SpdeParams::from_rates(double c, double gamma, int cutoff, double rho) {
  SpdeParams params;
  params.viscosity = c;
  params.drift = gamma;
  params.noise = std::sqrt(2.0 * c);
  params.cutoff = cutoff;
  params.rho = rho;
  params.matched_noise = true;
  return params;
}

void SpdeParams::validate() const {
  if (!(viscosity > 0.0)) throw std::invalid_argument("SPDE viscosity must be positive");
  if (cutoff < 1) throw std::invalid_argument("SPDE mode cutoff must be at least 1");
  if (!(rho >= 0.0 && rho <= 1.0)) throw std::invalid_argument("rho must lie in [0,1]");
  if (matched_noise && std::abs(noise * noise - 2.0 * viscosity) > 1e-12 * std::max(1.0, viscosity)) {
    throw std::invalid_argument("matched-noise mode requires sigma^2 = 2 nu");
  }
}

Complex SpdeParams::lambda(int k) const noexcept {
  const double wave = kTwoPi * k;
  return {viscosity * wave * wave, -wave * drift};
}

double SpdeParams::theta(int k) const noexcept { return kTwoPi * k * noise; }

SpdeState spde_init_equilibrium(const SpdeParams& params, Stream& rng) {
  params.validate();
  SpdeState state;
  state.modes = ComplexModes(params.cutoff);
  const double part_sd = std::sqrt(params.rho * (1.0 - params.rho) / 2.0);
  for (int k = 1; k <= params.cutoff; ++k) {
    const double re = rng.normal();
    const double im = rng.normal();
    state.modes[k] = Complex(part_sd * re, part_sd * im);
    state.modes[-k] = std::conj(state.modes[k]);
  }
  return state;
}

void spde_advance(SpdeState& state, const SpdeParams& params, double dt, double brownian_increment) {
  for (int k = 1; k <= state.modes.cutoff(); ++k) {
    const double theta = params.theta(k);
    const Complex lambda = params.lambda(k);
    const Complex exponent(-lambda.real() * dt + 0.5 * theta * theta * dt,
                           -lambda.imag() * dt + theta * brownian_increment);
    state.modes[k] *= std::exp(exponent);
    state.modes[-k] = std::conj(state.modes[k]);
  }
  state.time += dt;
  state.brownian += brownian_increment;
}

double spde_step(SpdeState& state, const SpdeParams& params, double dt, Stream& rng) {
  if (!(dt > 0.0)) throw std::invalid_argument("SPDE step needs dt > 0");
  const double increment = std::sqrt(dt) * rng.normal();
  spde_advance(state, params, dt, increment);
  return increment;
}

Complex spde_mode_autocovariance(const SpdeParams& params, int k, double t) {
  return params.rho * (1.0 - params.rho) * std::exp(-params.lambda(k) * t);
}

Complex spde_mean_flow(const SpdeParams& params, int k, double t, Complex initial) {
  return std::exp(-params.lambda(k) * t) * initial;
}

std::vector<Complex> spde_field_values(const SpdeState& state, std::span<const double> points) {
  std::vector<Complex> out;
  out.reserve(points.size());
  for (double u : points) {
    Complex value = state.modes[0];
    for (int k = 1; k <= state.modes.cutoff(); ++k) {
      value += state.modes[k] * mode(k, u) + state.modes[-k] * mode(-k, u);
    }
    out.push_back(value);
  }
  return out;
}

}  // namespace rlab
