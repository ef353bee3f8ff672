#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "rlab/fourier.hpp"
#include "rlab/rng.hpp"

namespace rlab {

// ---------------------------------------------------------------------------
// Transport limit (hyperbolic scale)

/// rho_t(u) = rho0((u + theta t) mod 1).
double transport_solution(const DensityProfile& initial, double theta, double t, double u);

/// Fourier-space transport semigroup: complex mode k is multiplied by
/// exp(2 pi i k theta t); each psi pair (k, -k) rotates by 2 pi k theta t.
PsiCoefficients transport_fourier(const PsiCoefficients& initial, double theta, double t);

/// Real psi-basis L^2 inner product of two truncated expansions.
double psi_inner(const PsiCoefficients& f, const PsiCoefficients& g);

/// Equilibrium covariance of the hyperbolic fluctuation field,
///   E[Y_t(f) Y_s(g)] = rho (1 - rho) <f, T_{t-s} g>,
/// where T_t g(u) = g(u + kappa t). The field moves with the density profile,
/// so Y_t(f) = Y_s(f(. - kappa (t-s))). Requires t >= s (lag >= 0).
double clt1_covariance(const PsiCoefficients& f, const PsiCoefficients& g, double lag, double rho, double kappa);

// ---------------------------------------------------------------------------
// Spectral SPDE  dX = nu Lap X + v grad X + sigma grad X dB, mode by mode

struct SpdeParams {
  double viscosity = 0.25;   // nu
  double drift = 0.0;        // v
  double noise = 0.70710678118654752;  // sigma
  int cutoff = 8;            // K
  double rho = 0.5;          // equilibrium density of the initial law
  /// Enforce sigma^2 = 2 nu, the relation of the particle-system limit.
  bool matched_noise = true;

  /// nu = c, v = gamma, sigma = sqrt(2c).
  static SpdeParams from_rates(double c, double gamma, int cutoff, double rho);

  /// Throws std::invalid_argument on nu <= 0, K < 1, rho outside [0,1] or a
  /// violated sigma^2 = 2 nu when matched_noise is set.
  void validate() const;

  /// lambda_k = nu (2 pi k)^2 - 2 pi v k i.
  Complex lambda(int k) const noexcept;
  /// theta_k = 2 pi k sigma.
  double theta(int k) const noexcept;
};

/// Mode amplitudes X(k), |k| <= K, with X(-k) = conj(X(k)), plus the value of
/// the single Brownian motion that drives every mode.
struct SpdeState {
  double time = 0.0;
  double brownian = 0.0;
  ComplexModes modes;
};

/// X(0) = 0; for k > 0 real and imaginary parts i.i.d. N(0, rho(1-rho)/2).
SpdeState spde_init_equilibrium(const SpdeParams& params, Stream& rng);

/// Exact update for a given Brownian increment:
///   X(k) <- X(k) exp(-lambda_k dt + i theta_k dB + theta_k^2 dt / 2).
void spde_advance(SpdeState& state, const SpdeParams& params, double dt, double brownian_increment);

/// Draws dB ~ N(0, dt) and applies spde_advance. Returns dB.
double spde_step(SpdeState& state, const SpdeParams& params, double dt, Stream& rng);

/// rho(1-rho) exp(-lambda_k t): E[X_t(k) conj(X_0(k))] at equilibrium.
Complex spde_mode_autocovariance(const SpdeParams& params, int k, double t);

/// Mean flow of one mode: exp(-lambda_k t) X_0(k). The noise term has mean zero.
Complex spde_mean_flow(const SpdeParams& params, int k, double t, Complex initial);

/// Field values sum_k X(k) g_k(u) on the given points.
std::vector<Complex> spde_field_values(const SpdeState& state, std::span<const double> points);

}  // namespace rlab
