#pragma once

#include <complex>
#include <cstddef>
#include <span>

namespace rlab {

/// Sample mean with unbiased variance and standard error of the mean.
struct Estimate {
  double mean = 0.0;
  double variance = 0.0;
  double std_error = 0.0;
  std::size_t count = 0;
};

/// Throws std::invalid_argument for fewer than two samples.
Estimate estimate(std::span<const double> samples);

/// Unbiased sample covariance of paired samples.
double covariance(std::span<const double> x, std::span<const double> y);

/// Real and imaginary parts estimated separately.
struct ComplexEstimate {
  Estimate re;
  Estimate im;
  /// Standard error of arg(mean) by the delta method, using the sample
  /// covariance of the two parts.
  double phase_std_error = 0.0;

  std::complex<double> mean() const noexcept { return {re.mean, im.mean}; }
};

ComplexEstimate estimate(std::span<const std::complex<double>> samples);

}  // namespace rlab
