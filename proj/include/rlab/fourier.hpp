#pragma once

#include <complex>
#include <cstddef>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

#include "rlab/ring.hpp"

namespace rlab {

using Complex = std::complex<double>;

/// Real orthonormal basis of L^2(T):
///   psi_k(u) = sqrt(2) sin(2 pi k u)  for k < 0
///   psi_0(u) = 1
///   psi_k(u) = sqrt(2) cos(2 pi k u)  for k > 0
double psi(int k, double u) noexcept;

/// Complex mode g_k(u) = exp(2 pi i k u).
Complex mode(int k, double u) noexcept;

/// gamma_k = 1 + 4 pi^2 k^2, eigenvalue of (1 - Laplacian) on psi_k.
double sobolev_weight(int k) noexcept;

/// Values f(x/n) for x = 1..n (index x-1).
std::vector<double> psi_grid(int k, std::size_t n);

/// Coefficients indexed by k in [-K, K].
template <class T>
class ModeArray {
 public:
  ModeArray() = default;
  explicit ModeArray(int cutoff) : cutoff_(cutoff), values_(static_cast<std::size_t>(2 * cutoff + 1)) {
    if (cutoff < 0) throw std::invalid_argument("mode cutoff must be nonnegative");
  }

  int cutoff() const noexcept { return cutoff_; }
  T& operator[](int k) { return values_.at(static_cast<std::size_t>(k + cutoff_)); }
  const T& operator[](int k) const { return values_.at(static_cast<std::size_t>(k + cutoff_)); }
  std::span<const T> values() const noexcept { return values_; }

  friend bool operator==(const ModeArray&, const ModeArray&) = default;

 private:
  int cutoff_ = 0;
  std::vector<T> values_{T{}};
};

using PsiCoefficients = ModeArray<double>;
using ComplexModes = ModeArray<Complex>;

/// psi-basis coefficients from complex ones, where h(k) = <f, g_k> = int f conj(g_k):
/// a_0 = h(0), a_k = sqrt(2) Re h(k), a_{-k} = sqrt(2) Im h(k) for k > 0.
PsiCoefficients psi_from_complex(const ComplexModes& modes);
/// Inverse of psi_from_complex; the result is conjugate symmetric.
ComplexModes complex_from_psi(const PsiCoefficients& coeffs);

/// Truncated H_{-m} norm (sum_{|k|<=K} a_k^2 gamma_k^{-m})^{1/2}. Requires m > 0.
double sobolev_minus_norm(const PsiCoefficients& coeffs, double m);

/// A density profile on the torus given by finitely many psi coefficients.
class DensityProfile {
 public:
  static DensityProfile constant(double rho);
  /// rho0 = sum_k coeffs[k] psi_k.
  static DensityProfile fourier(std::map<int, double> coeffs);

  double operator()(double u) const noexcept;
  const std::map<int, double>& coefficients() const noexcept { return coeffs_; }
  /// Exact psi coefficients truncated to |k| <= K.
  PsiCoefficients psi_coefficients(int cutoff) const;
  /// True if the constant profile; value in `rho`.
  bool is_constant() const noexcept;

 private:
  std::map<int, double> coeffs_;
};

/// Empirical-measure pairing <pi, f> = (1/n) sum_x eta(x) f(x/n); f_grid[x-1] = f(x/n).
double pair_empirical(const OccupancyState& state, std::span<const double> f_grid);

/// Fluctuation pairing n^{-1/2} sum_x (eta(x) - rho) f(x/n).
double pair_fluctuation(const OccupancyState& state, double rho, std::span<const double> f_grid);

/// Fast projections of a configuration onto all modes |k| <= K.
///
/// Uses an n-point twiddle table, so each projection costs O(n + N K) for N
/// particles. K <= n/4 keeps the grid inside its exact discrete-orthogonality
/// range.
class FieldProjector {
 public:
  FieldProjector(std::size_t n, int cutoff);

  std::size_t n() const noexcept { return n_; }
  int cutoff() const noexcept { return cutoff_; }

  /// S_k = sum_x eta(x) exp(-2 pi i k x / n) for k = -K..K.
  ComplexModes mode_sums(const OccupancyState& state) const;

  /// <pi, g_k> with the conjugate convention: (1/n) S_k.
  ComplexModes empirical_modes(const OccupancyState& state) const;
  /// Y(k) = n^{-1/2} sum_x (eta(x) - rho) exp(-2 pi i k x / n).
  ComplexModes fluctuation_modes(const OccupancyState& state, double rho) const;

  PsiCoefficients empirical_psi(const OccupancyState& state) const;
  PsiCoefficients fluctuation_psi(const OccupancyState& state, double rho) const;

 private:
  std::size_t n_;
  int cutoff_;
  std::vector<double> cos_;
  std::vector<double> sin_;
};

}  // namespace rlab
