#include "rlab/oracle.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <cmath>
#include <stdexcept>
#include <string>

namespace rlab::oracle {

namespace {

StateIndex bit(StateIndex state, int p) noexcept { return (state >> (p - 1)) & 1u; }

StateIndex with_bit(StateIndex state, int p, StateIndex value) noexcept {
  const StateIndex mask = StateIndex{1} << (p - 1);
  return value ? (state | mask) : (state & ~mask);
}

void check_size(int n) {
  if (n < 4 || n > kMaxSize) {
    throw std::invalid_argument("exact oracle supports 4 <= n <= " + std::to_string(kMaxSize) + ", got " +
                                std::to_string(n));
  }
}

double grad_minus(std::span<const double> f_grid, int n, int x) {
  // f_grid[x-1] = f(x/n); position 0 is position n on the torus.
  auto f = [&](int y) {
    const int wrapped = ((y - 1) % n + n) % n + 1;
    return f_grid[static_cast<std::size_t>(wrapped - 1)];
  };
  return n * (f(x) - f(x - 1));
}

double grad_plus(std::span<const double> f_grid, int n, int x) { return grad_minus(f_grid, n, x + 1); }

}  // namespace

StateIndex apply_move(StateIndex state, int n, MoveKind move) noexcept {
  StateIndex out = 0;
  switch (move) {
    case MoveKind::kTopToPenultimate:
      // (s2, ..., s_{n-1}, s1, s_n)
      for (int p = 1; p <= n - 2; ++p) out = with_bit(out, p, bit(state, p + 1));
      out = with_bit(out, n - 1, bit(state, 1));
      out = with_bit(out, n, bit(state, n));
      return out;
    case MoveKind::kTopToBottom:
      // (s2, ..., s_n, s1)
      for (int p = 1; p <= n - 1; ++p) out = with_bit(out, p, bit(state, p + 1));
      return with_bit(out, n, bit(state, 1));
    case MoveKind::kBottomToTop:
      // (s_n, s1, ..., s_{n-1})
      out = with_bit(out, 1, bit(state, n));
      for (int p = 2; p <= n; ++p) out = with_bit(out, p, bit(state, p - 1));
      return out;
    case MoveKind::kSwapTopTwo:
      out = with_bit(state, 1, bit(state, 2));
      return with_bit(out, 2, bit(state, 1));
  }
  return state;
}

MeasureVector::MeasureVector(std::vector<double> weights) : weights_(std::move(weights)) {
  double total = 0.0;
  for (double w : weights_) {
    if (!(w >= 0.0)) throw std::invalid_argument("measure weights must be nonnegative");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("measure weights must sum to 1");
}

MeasureVector bernoulli_measure(int n, double rho) {
  check_size(n);
  if (!(rho >= 0.0 && rho <= 1.0)) throw std::invalid_argument("rho must lie in [0,1]");
  const std::size_t states = std::size_t{1} << n;
  std::vector<double> w(states);
  for (StateIndex s = 0; s < states; ++s) {
    const int ones = std::popcount(s);
    w[s] = std::pow(rho, ones) * std::pow(1.0 - rho, n - ones);
  }
  return MeasureVector(std::move(w));
}

MeasureVector hyperplane_measure(int n, int particles) {
  check_size(n);
  if (particles < 0 || particles > n) throw std::invalid_argument("particle count out of range");
  const std::size_t states = std::size_t{1} << n;
  std::size_t count = 0;
  for (StateIndex s = 0; s < states; ++s) count += std::popcount(s) == particles;
  std::vector<double> w(states, 0.0);
  for (StateIndex s = 0; s < states; ++s) {
    if (std::popcount(s) == particles) w[s] = 1.0 / static_cast<double>(count);
  }
  return MeasureVector(std::move(w));
}

MeasureVector point_mass(int n, StateIndex state) {
  check_size(n);
  std::vector<double> w(std::size_t{1} << n, 0.0);
  w.at(state) = 1.0;
  return MeasureVector(std::move(w));
}

GeneratorMatrix::GeneratorMatrix(int n, const Rates& rates) : n_(n), rates_(rates) {
  check_size(n);
  const std::size_t states = std::size_t{1} << n;
  entries_.assign(4 * states, Entry{0, 0.0});
  counts_.assign(states, 0);
  diagonal_.assign(states, 0.0);
  for (StateIndex s = 0; s < states; ++s) {
    Entry* row = entries_.data() + 4 * static_cast<std::size_t>(s);
    std::uint8_t count = 0;
    for (MoveKind move : kAllMoves) {
      const double rate = rates.of(move);
      if (rate == 0.0) continue;
      const StateIndex target = apply_move(s, n, move);
      if (target == s) continue;
      auto* found = std::find_if(row, row + count, [&](const Entry& e) { return e.target == target; });
      if (found != row + count) {
        found->rate += rate;
      } else {
        row[count++] = Entry{target, rate};
      }
    }
    counts_[s] = count;
    double exit = 0.0;
    for (std::uint8_t i = 0; i < count; ++i) exit += row[i].rate;
    diagonal_[s] = -exit;
  }
}

double GeneratorMatrix::max_exit_rate() const noexcept {
  double best = 0.0;
  for (double d : diagonal_) best = std::max(best, -d);
  return best;
}

StateFunction GeneratorMatrix::apply(std::span<const double> f) const {
  if (f.size() != size()) throw std::invalid_argument("function size must equal 2^n");
  StateFunction out(size());
  for (StateIndex s = 0; s < size(); ++s) {
    double acc = 0.0;
    for (const Entry& e : row(s)) acc += e.rate * (f[e.target] - f[s]);
    out[s] = acc;
  }
  return out;
}

std::vector<double> GeneratorMatrix::left_apply(std::span<const double> mu) const {
  if (mu.size() != size()) throw std::invalid_argument("measure size must equal 2^n");
  std::vector<double> out(size(), 0.0);
  for (StateIndex s = 0; s < size(); ++s) {
    out[s] += mu[s] * diagonal_[s];
    for (const Entry& e : row(s)) out[e.target] += mu[s] * e.rate;
  }
  return out;
}

GeneratorMatrix build_generator(int n, const Rates& rates) { return GeneratorMatrix(n, rates); }

double check_invariance(const GeneratorMatrix& generator, const MeasureVector& mu) {
  const auto flow = generator.left_apply(mu.weights());
  double worst = 0.0;
  for (double v : flow) worst = std::max(worst, std::abs(v));
  return worst;
}

double row_sum_residual(const GeneratorMatrix& generator) {
  double worst = 0.0;
  for (StateIndex s = 0; s < generator.size(); ++s) {
    double sum = generator.diagonal(s);
    for (const auto& e : generator.row(s)) {
      if (e.rate < 0.0) return std::numeric_limits<double>::infinity();
      sum += e.rate;
    }
    worst = std::max(worst, std::abs(sum));
  }
  return worst;
}

double dirichlet_form(std::span<const double> g, const Rates& rates, int n, double rho) {
  for (double v : g) {
    if (v < 0.0) throw std::invalid_argument("square-root Dirichlet form needs g >= 0");
  }
  std::vector<double> root(g.size());
  std::transform(g.begin(), g.end(), root.begin(), [](double v) { return std::sqrt(v); });
  return dirichlet_form_quadratic(root, rates, n, rho);
}

double dirichlet_form_quadratic(std::span<const double> h, const Rates& rates, int n, double rho) {
  const MeasureVector nu = bernoulli_measure(n, rho);
  if (h.size() != nu.size()) throw std::invalid_argument("function size must equal 2^n");
  double total = 0.0;
  for (MoveKind move : kAllMoves) {
    double integral = 0.0;
    for (StateIndex s = 0; s < nu.size(); ++s) {
      const double diff = h[apply_move(s, n, move)] - h[s];
      integral += nu[s] * diff * diff;
    }
    total += 0.5 * rates.of(move) * integral;
  }
  return total;
}

double generator_quadratic_form(const GeneratorMatrix& generator, std::span<const double> h, const MeasureVector& mu) {
  const auto qh = generator.apply(h);
  double sum = 0.0;
  for (StateIndex s = 0; s < generator.size(); ++s) sum -= mu[s] * qh[s] * h[s];
  return sum;
}

StateFunction carre_du_champ(const GeneratorMatrix& generator, std::span<const double> f) {
  StateFunction squared(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) squared[i] = f[i] * f[i];
  const auto q_squared = generator.apply(squared);
  const auto q_f = generator.apply(f);
  StateFunction out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = q_squared[i] - 2.0 * f[i] * q_f[i];
  return out;
}

StateFunction coordinate_function(int n, int x) {
  check_size(n);
  StateFunction out(std::size_t{1} << n);
  for (StateIndex s = 0; s < out.size(); ++s) out[s] = occupation(s, x);
  return out;
}

StateFunction coordinate_formula(int n, const Rates& r, int x) {
  check_size(n);
  if (x < 1 || x > n) throw std::invalid_argument("site out of range");
  StateFunction out(std::size_t{1} << n);
  for (StateIndex s = 0; s < out.size(); ++s) {
    auto eta = [&](int p) { return static_cast<double>(occupation(s, p)); };
    double v = 0.0;
    if (x == 1) {
      v = (r.a + r.b + r.d) * (eta(2) - eta(1)) + r.c * (eta(n) - eta(1));
    } else if (x == 2) {
      v = (r.a + r.b) * (eta(3) - eta(2)) + (r.c + r.d) * (eta(1) - eta(2));
    } else if (x == n - 1) {
      v = r.a * (eta(1) - eta(n - 1)) + r.b * (eta(n) - eta(n - 1)) + r.c * (eta(n - 2) - eta(n - 1));
    } else if (x == n) {
      v = r.b * (eta(1) - eta(n)) + r.c * (eta(n - 1) - eta(n));
    } else {
      v = (r.a + r.b) * (eta(x + 1) - eta(x)) + r.c * (eta(x - 1) - eta(x));
    }
    out[s] = v;
  }
  return out;
}

StateFunction empirical_pairing(int n, std::span<const double> f_grid) {
  check_size(n);
  if (f_grid.size() != static_cast<std::size_t>(n)) throw std::invalid_argument("grid size must equal n");
  StateFunction out(std::size_t{1} << n);
  for (StateIndex s = 0; s < out.size(); ++s) {
    double sum = 0.0;
    for (int x = 1; x <= n; ++x) sum += occupation(s, x) * f_grid[static_cast<std::size_t>(x - 1)];
    out[s] = sum / n;
  }
  return out;
}

namespace {

// Per-state building blocks shared by the drift and the QV integrand.
struct BoundaryTerms {
  double sum_minus;   // sum_x eta(x) grad^- f(x/n)
  double sum_plus;    // sum_x eta(x) grad^+ f(x/n)
  double top_bottom;  // eta(1) - eta(n)
  double top_second;  // eta(1) - eta(2)
};

BoundaryTerms boundary_terms(StateIndex s, int n, std::span<const double> f_grid) {
  BoundaryTerms t{0.0, 0.0, 0.0, 0.0};
  for (int x = 1; x <= n; ++x) {
    if (!occupation(s, x)) continue;
    t.sum_minus += grad_minus(f_grid, n, x);
    t.sum_plus += grad_plus(f_grid, n, x);
  }
  t.top_bottom = occupation(s, 1) - occupation(s, n);
  t.top_second = occupation(s, 1) - occupation(s, 2);
  return t;
}

}  // namespace

StateFunction drift_closed_form(int n, const Rates& r, std::span<const double> f_grid) {
  check_size(n);
  const double grad_minus_origin = grad_minus(f_grid, n, 0);
  const double grad_plus_first = grad_plus(f_grid, n, 1);
  const double scale = 1.0 / (static_cast<double>(n) * n);
  StateFunction out(std::size_t{1} << n);
  for (StateIndex s = 0; s < out.size(); ++s) {
    const BoundaryTerms t = boundary_terms(s, n, f_grid);
    out[s] = scale * (-(r.a + r.b) * t.sum_minus + r.c * t.sum_plus - r.a * t.top_bottom * grad_minus_origin +
                      r.d * t.top_second * grad_plus_first);
  }
  return out;
}

StateFunction qv_integrand_closed_form(int n, const Rates& r, std::span<const double> f_grid, int beta) {
  check_size(n);
  const double nn = n;
  const double gm0 = grad_minus(f_grid, n, 0);
  const double gp1 = grad_plus(f_grid, n, 1);
  StateFunction out(std::size_t{1} << n);
  for (StateIndex s = 0; s < out.size(); ++s) {
    const BoundaryTerms t = boundary_terms(s, n, f_grid);
    const double pi_minus = t.sum_minus / nn;  // pi^n(grad^- f)
    const double pi_plus = t.sum_plus / nn;    // pi^n(grad^+ f)
    out[s] = (r.a + r.b) * std::pow(nn, beta - 2) * pi_minus * pi_minus +
             r.c * std::pow(nn, beta - 2) * pi_plus * pi_plus +
             2.0 * r.a * std::pow(nn, beta - 3) * t.top_bottom * gm0 * pi_minus +
             r.a * std::pow(nn, beta - 4) * t.top_bottom * t.top_bottom * gm0 * gm0 +
             r.d * std::pow(nn, beta - 4) * t.top_second * t.top_second * gp1 * gp1;
  }
  return out;
}

namespace {

// Poisson(mean) weights, accumulated until the remaining mass is below `tail`.
template <class Step>
void poisson_series(double mean, double tail, std::size_t max_iterations, Step&& step) {
  double cumulative = 0.0;
  const double log_mean = mean > 0.0 ? std::log(mean) : 0.0;
  for (std::size_t j = 0; j < max_iterations; ++j) {
    const double weight =
        mean > 0.0 ? std::exp(-mean + static_cast<double>(j) * log_mean - std::lgamma(static_cast<double>(j) + 1.0))
                   : (j == 0 ? 1.0 : 0.0);
    step(j, weight);
    cumulative += weight;
    if (1.0 - cumulative <= tail && static_cast<double>(j) >= mean) return;
  }
  throw std::runtime_error("uniformization did not converge: remaining Poisson mass " +
                           std::to_string(1.0 - cumulative) + " after " + std::to_string(max_iterations) +
                           " terms");
}

}  // namespace

double exact_expectation(const GeneratorMatrix& generator, const MeasureVector& initial, std::span<const double> f,
                         double t, UniformizationOptions options) {
  if (t < 0.0) throw std::invalid_argument("time must be nonnegative");
  if (f.size() != generator.size() || initial.size() != generator.size()) {
    throw std::invalid_argument("dimension mismatch");
  }
  double f_max = 0.0;
  for (double v : f) f_max = std::max(f_max, std::abs(v));
  if (t == 0.0 || f_max == 0.0) {
    double sum = 0.0;
    for (StateIndex s = 0; s < generator.size(); ++s) sum += initial[s] * f[s];
    return sum;
  }
  const double uniform_rate = std::max(generator.max_exit_rate(), 1e-300);
  std::vector<double> current(f.begin(), f.end());
  double result = 0.0;
  poisson_series(uniform_rate * t, options.tolerance / f_max, options.max_iterations, [&](std::size_t, double w) {
    double pairing = 0.0;
    for (StateIndex s = 0; s < generator.size(); ++s) pairing += initial[s] * current[s];
    result += w * pairing;
    // current <- P current with P = I + Q / rate
    const auto qf = generator.apply(current);
    for (std::size_t s = 0; s < current.size(); ++s) current[s] += qf[s] / uniform_rate;
  });
  return result;
}

std::vector<double> exact_distribution(const GeneratorMatrix& generator, const MeasureVector& initial, double t,
                                       UniformizationOptions options) {
  if (t < 0.0) throw std::invalid_argument("time must be nonnegative");
  std::vector<double> current(initial.weights().begin(), initial.weights().end());
  if (t == 0.0) return current;
  const double uniform_rate = std::max(generator.max_exit_rate(), 1e-300);
  std::vector<double> result(current.size(), 0.0);
  poisson_series(uniform_rate * t, options.tolerance, options.max_iterations, [&](std::size_t, double w) {
    for (std::size_t s = 0; s < current.size(); ++s) result[s] += w * current[s];
    const auto flow = generator.left_apply(current);
    for (std::size_t s = 0; s < current.size(); ++s) current[s] += flow[s] / uniform_rate;
  });
  return result;
}

}  // namespace rlab::oracle
