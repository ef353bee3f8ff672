#include "rlab/fourier.hpp"

#include <cmath>
#include <numbers>

namespace rlab {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}  // namespace

double psi(int k, double u) noexcept {
  if (k == 0) return 1.0;
  const double arg = kTwoPi * k * u;
  return k > 0 ? std::numbers::sqrt2 * std::cos(arg) : std::numbers::sqrt2 * std::sin(arg);
}

Complex mode(int k, double u) noexcept { return std::polar(1.0, kTwoPi * k * u); }

double sobolev_weight(int k) noexcept { return 1.0 + 4.0 * std::numbers::pi * std::numbers::pi * k * k; }

std::vector<double> psi_grid(int k, std::size_t n) {
  std::vector<double> grid(n);
  for (std::size_t x = 1; x <= n; ++x) grid[x - 1] = psi(k, static_cast<double>(x) / static_cast<double>(n));
  return grid;
}

PsiCoefficients psi_from_complex(const ComplexModes& modes) {
  PsiCoefficients out(modes.cutoff());
  out[0] = modes[0].real();
  for (int k = 1; k <= modes.cutoff(); ++k) {
    out[k] = std::numbers::sqrt2 * modes[k].real();
    out[-k] = std::numbers::sqrt2 * modes[k].imag();
  }
  return out;
}

ComplexModes complex_from_psi(const PsiCoefficients& coeffs) {
  ComplexModes out(coeffs.cutoff());
  out[0] = coeffs[0];
  for (int k = 1; k <= coeffs.cutoff(); ++k) {
    out[k] = Complex(coeffs[k], coeffs[-k]) / std::numbers::sqrt2;
    out[-k] = std::conj(out[k]);
  }
  return out;
}

double sobolev_minus_norm(const PsiCoefficients& coeffs, double m) {
  if (!(m > 0.0)) throw std::invalid_argument("regularity index m must be positive for the H_{-m} norm");
  double sum = 0.0;
  for (int k = -coeffs.cutoff(); k <= coeffs.cutoff(); ++k) {
    sum += coeffs[k] * coeffs[k] * std::pow(sobolev_weight(k), -m);
  }
  return std::sqrt(sum);
}

DensityProfile DensityProfile::constant(double rho) { return fourier({{0, rho}}); }

DensityProfile DensityProfile::fourier(std::map<int, double> coeffs) {
  DensityProfile profile;
  for (auto& [k, value] : coeffs) {
    if (value != 0.0) profile.coeffs_[k] = value;
  }
  return profile;
}

double DensityProfile::operator()(double u) const noexcept {
  double value = 0.0;
  for (const auto& [k, c] : coeffs_) value += c * psi(k, u);
  return value;
}

PsiCoefficients DensityProfile::psi_coefficients(int cutoff) const {
  PsiCoefficients out(cutoff);
  for (const auto& [k, c] : coeffs_) {
    if (k >= -cutoff && k <= cutoff) out[k] = c;
  }
  return out;
}

bool DensityProfile::is_constant() const noexcept {
  return coeffs_.empty() || (coeffs_.size() == 1 && coeffs_.begin()->first == 0);
}

double pair_empirical(const OccupancyState& state, std::span<const double> f_grid) {
  if (f_grid.size() != state.size()) throw std::invalid_argument("grid size must equal n");
  double sum = 0.0;
  for (std::size_t x = 1; x <= state.size(); ++x) {
    if (state(x)) sum += f_grid[x - 1];
  }
  return sum / static_cast<double>(state.size());
}

double pair_fluctuation(const OccupancyState& state, double rho, std::span<const double> f_grid) {
  if (f_grid.size() != state.size()) throw std::invalid_argument("grid size must equal n");
  if (!(rho >= 0.0 && rho <= 1.0)) throw std::invalid_argument("rho must lie in [0,1]");
  double sum = 0.0;
  for (std::size_t x = 1; x <= state.size(); ++x) sum += (state(x) - rho) * f_grid[x - 1];
  return sum / std::sqrt(static_cast<double>(state.size()));
}

FieldProjector::FieldProjector(std::size_t n, int cutoff) : n_(n), cutoff_(cutoff), cos_(n), sin_(n) {
  if (cutoff < 0) throw std::invalid_argument("mode cutoff must be nonnegative");
  if (4 * static_cast<std::size_t>(cutoff) > n) throw std::invalid_argument("mode cutoff K must satisfy K <= n/4");
  for (std::size_t m = 0; m < n; ++m) {
    const double angle = kTwoPi * static_cast<double>(m) / static_cast<double>(n);
    cos_[m] = std::cos(angle);
    sin_[m] = std::sin(angle);
  }
}

ComplexModes FieldProjector::mode_sums(const OccupancyState& state) const {
  if (state.size() != n_) throw std::invalid_argument("state size does not match projector");
  ComplexModes sums(cutoff_);
  double count = 0.0;
  std::vector<double> re(static_cast<std::size_t>(cutoff_) + 1, 0.0);
  std::vector<double> im(static_cast<std::size_t>(cutoff_) + 1, 0.0);
  for (std::size_t x = 1; x <= n_; ++x) {
    if (!state(x)) continue;
    count += 1.0;
    std::size_t m = x % n_;
    for (int k = 1; k <= cutoff_; ++k) {
      re[k] += cos_[m];
      im[k] -= sin_[m];
      m += x;
      if (m >= n_) m -= n_;
    }
  }
  sums[0] = count;
  for (int k = 1; k <= cutoff_; ++k) {
    sums[k] = Complex(re[k], im[k]);
    sums[-k] = std::conj(sums[k]);
  }
  return sums;
}

ComplexModes FieldProjector::empirical_modes(const OccupancyState& state) const {
  ComplexModes sums = mode_sums(state);
  const double inv_n = 1.0 / static_cast<double>(n_);
  ComplexModes out(cutoff_);
  for (int k = -cutoff_; k <= cutoff_; ++k) out[k] = sums[k] * inv_n;
  return out;
}

ComplexModes FieldProjector::fluctuation_modes(const OccupancyState& state, double rho) const {
  if (!(rho >= 0.0 && rho <= 1.0)) throw std::invalid_argument("rho must lie in [0,1]");
  ComplexModes sums = mode_sums(state);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n_));
  ComplexModes out(cutoff_);
  // sum_x exp(-2 pi i k x/n) vanishes for 0 < |k| < n, so only k = 0 is recentred.
  out[0] = (sums[0] - rho * static_cast<double>(n_)) * scale;
  for (int k = 1; k <= cutoff_; ++k) {
    out[k] = sums[k] * scale;
    out[-k] = std::conj(out[k]);
  }
  return out;
}

PsiCoefficients FieldProjector::empirical_psi(const OccupancyState& state) const {
  return psi_from_complex(empirical_modes(state));
}

PsiCoefficients FieldProjector::fluctuation_psi(const OccupancyState& state, double rho) const {
  return psi_from_complex(fluctuation_modes(state, rho));
}

}  // namespace rlab
