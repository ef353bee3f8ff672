#include "rlab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace rlab {

Estimate estimate(std::span<const double> samples) {
  if (samples.size() < 2) throw std::invalid_argument("replica statistics need at least two replicas");
  const auto count = static_cast<double>(samples.size());
  double sum = 0.0;
  for (double x : samples) sum += x;
  const double mean = sum / count;
  double squares = 0.0;
  for (double x : samples) squares += (x - mean) * (x - mean);
  const double variance = squares / (count - 1.0);
  return {mean, variance, std::sqrt(variance / count), samples.size()};
}

double covariance(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("covariance needs paired samples");
  if (x.size() < 2) throw std::invalid_argument("replica statistics need at least two replicas");
  const auto count = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= count;
  my /= count;
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) sum += (x[i] - mx) * (y[i] - my);
  return sum / (count - 1.0);
}

ComplexEstimate estimate(std::span<const std::complex<double>> samples) {
  std::vector<double> re(samples.size());
  std::vector<double> im(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    re[i] = samples[i].real();
    im[i] = samples[i].imag();
  }
  ComplexEstimate out{estimate(re), estimate(im), 0.0};
  const double x = out.re.mean;
  const double y = out.im.mean;
  const double r2 = x * x + y * y;
  if (r2 > 0.0) {
    // d arg / dx = -y/r^2, d arg / dy = x/r^2
    const auto count = static_cast<double>(samples.size());
    const double cxy = covariance(re, im) / count;
    const double var = (y * y * out.re.std_error * out.re.std_error + x * x * out.im.std_error * out.im.std_error -
                        2.0 * x * y * cxy) /
                       (r2 * r2);
    out.phase_std_error = std::sqrt(std::max(var, 0.0));
  } else {
    out.phase_std_error = std::numeric_limits<double>::infinity();
  }
  return out;
}

}  // namespace rlab
