#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "rlab/rates.hpp"

namespace rlab::oracle {

/// Configurations of Omega_n encoded as bitmasks: bit p-1 holds eta(p).
using StateIndex = std::uint32_t;

inline constexpr int kMaxSize = 12;

inline int occupation(StateIndex state, int p) noexcept { return static_cast<int>((state >> (p - 1)) & 1u); }

/// Move action on a bitmask, written from the literal definitions of
/// sigma^{1->n-1}, sigma^{1->n}, sigma^{n->1} and sigma^{1<->2}.
StateIndex apply_move(StateIndex state, int n, MoveKind move) noexcept;

/// A function Omega_n -> R, indexed by StateIndex.
using StateFunction = std::vector<double>;

/// Probability vector on Omega_n.
class MeasureVector {
 public:
  /// Throws std::invalid_argument unless entries are nonnegative and sum to 1 (1e-12).
  explicit MeasureVector(std::vector<double> weights);

  std::span<const double> weights() const noexcept { return weights_; }
  double operator[](StateIndex s) const noexcept { return weights_[s]; }
  std::size_t size() const noexcept { return weights_.size(); }

 private:
  std::vector<double> weights_;
};

/// Product Bernoulli measure nu_rho.
MeasureVector bernoulli_measure(int n, double rho);
/// Uniform measure on the hyperplane {sum eta = particles}.
MeasureVector hyperplane_measure(int n, int particles);
MeasureVector point_mass(int n, StateIndex state);

/// Sparse generator of the occupancy chain (unscaled: time is microscopic).
/// Each row keeps at most four off-diagonal entries; duplicate targets of
/// different moves are merged and self-loops dropped.
class GeneratorMatrix {
 public:
  struct Entry {
    StateIndex target;
    double rate;
  };

  GeneratorMatrix(int n, const Rates& rates);

  int n() const noexcept { return n_; }
  const Rates& rates() const noexcept { return rates_; }
  std::size_t size() const noexcept { return diagonal_.size(); }

  std::span<const Entry> row(StateIndex s) const noexcept {
    return {entries_.data() + 4 * static_cast<std::size_t>(s), counts_[s]};
  }
  double diagonal(StateIndex s) const noexcept { return diagonal_[s]; }
  double max_exit_rate() const noexcept;

  /// (Q f)(eta) = sum_moves rate (f(eta^move) - f(eta)).
  StateFunction apply(std::span<const double> f) const;
  /// mu^T Q.
  std::vector<double> left_apply(std::span<const double> mu) const;

 private:
  int n_;
  Rates rates_;
  std::vector<Entry> entries_;
  std::vector<std::uint8_t> counts_;
  std::vector<double> diagonal_;
};

/// Throws std::invalid_argument unless 4 <= n <= 12.
GeneratorMatrix build_generator(int n, const Rates& rates);

/// max |(mu^T Q)(eta)|.
double check_invariance(const GeneratorMatrix& generator, const MeasureVector& mu);

/// Largest |row sum| over all states.
double row_sum_residual(const GeneratorMatrix& generator);

/// sum_moves (rate/2) int (sqrt g(eta^move) - sqrt g(eta))^2 dnu_rho.
/// Throws std::invalid_argument if g has a negative value.
double dirichlet_form(std::span<const double> g, const Rates& rates, int n, double rho);

/// sum_moves (rate/2) int (h(eta^move) - h(eta))^2 dnu_rho.
double dirichlet_form_quadratic(std::span<const double> h, const Rates& rates, int n, double rho);

/// <(-Q) h, h>_mu.
double generator_quadratic_form(const GeneratorMatrix& generator, std::span<const double> h, const MeasureVector& mu);

/// Gamma(F) = Q(F^2) - 2 F Q(F).
StateFunction carre_du_champ(const GeneratorMatrix& generator, std::span<const double> f);

/// Closed-form coordinate action (Q eta(x))(eta) for x in 1..n, from the
/// five boundary/bulk formulas.
StateFunction coordinate_formula(int n, const Rates& rates, int x);

/// The indicator eta(x) as a state function.
StateFunction coordinate_function(int n, int x);

/// F(eta) = <pi^n, f> = (1/n) sum_x eta(x) f(x/n), f_grid[x-1] = f(x/n).
StateFunction empirical_pairing(int n, std::span<const double> f_grid);

/// Closed-form drift n^beta L <pi, f> divided by n^beta:
///   n^{-2} [ -(a+b) sum eta(x) grad^- f(x/n) + c sum eta(x) grad^+ f(x/n)
///            - a (eta(1)-eta(n)) grad^- f(0) + d (eta(1)-eta(2)) grad^+ f(1/n) ].
StateFunction drift_closed_form(int n, const Rates& rates, std::span<const double> f_grid);

/// Five-term quadratic-variation integrand of the Dynkin martingale of
/// <pi^n, f> at time scale n^beta.
StateFunction qv_integrand_closed_form(int n, const Rates& rates, std::span<const double> f_grid, int beta);

/// Uniformization settings: absolute error bound and iteration cap.
struct UniformizationOptions {
  double tolerance = 1e-10;
  std::size_t max_iterations = 1'000'000;
};

/// E_mu0[F(eta_t)] at microscopic time t by uniformization. Throws
/// std::runtime_error naming the achieved bound if the cap is hit.
double exact_expectation(const GeneratorMatrix& generator, const MeasureVector& initial, std::span<const double> f,
                         double t, UniformizationOptions options = {});

/// Law of eta_t under mu0 (total-variation error below tolerance).
std::vector<double> exact_distribution(const GeneratorMatrix& generator, const MeasureVector& initial, double t,
                                       UniformizationOptions options = {});

}  // namespace rlab::oracle
