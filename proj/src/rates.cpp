#include "rlab/rates.hpp"

#include <stdexcept>
#include <string>

namespace rlab {

std::string_view to_string(MoveKind move) noexcept {
  switch (move) {
    case MoveKind::kTopToPenultimate: return "top-to-penultimate";
    case MoveKind::kTopToBottom: return "top-to-bottom";
    case MoveKind::kBottomToTop: return "bottom-to-top";
    case MoveKind::kSwapTopTwo: return "swap-top-two";
  }
  return "unknown";
}

namespace {

void check_rate(double value, const char* name) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw std::invalid_argument(std::string("rate ") + name + " = " + std::to_string(value) + " outside [0,1]");
  }
}

void check_beta(int beta) {
  if (beta != 1 && beta != 2) throw std::invalid_argument("beta must be 1 or 2");
}

}  // namespace

RateScheme::RateScheme(RateMode mode, Rates rates, int beta, double gamma)
    : mode_(mode), base_(rates), beta_(beta), gamma_(gamma) {
  check_beta(beta);
}

RateScheme RateScheme::fixed(double a, double b, double c, double d, int beta) {
  check_rate(a, "a");
  check_rate(b, "b");
  check_rate(c, "c");
  check_rate(d, "d");
  RateScheme scheme(RateMode::kFixed, Rates{a, b, c, d}, beta, 0.0);
  scheme.at(4);
  return scheme;
}

RateScheme RateScheme::weakly_asymmetric(double c, double gamma, double d, int beta) {
  check_rate(c, "c");
  check_rate(d, "d");
  if (!(c > 0.0)) throw std::invalid_argument("weakly asymmetric scheme needs c > 0");
  return RateScheme(RateMode::kWeaklyAsymmetric, Rates{0.0, c, c, d}, beta, gamma);
}

RateScheme RateScheme::rudvalis(int beta) { return fixed(0.5, 0.5, 0.0, 0.0, beta).with_preset_name("rudvalis"); }

RateScheme RateScheme::symmetric(int beta) {
  return fixed(0.0, 0.25, 0.25, 0.25, beta).with_preset_name("symmetric");
}

RateScheme RateScheme::weak_asym(double gamma, double c, double d) {
  return weakly_asymmetric(c, gamma, d, 2).with_preset_name("weak-asym");
}

Rates RateScheme::at(int n) const {
  if (n < 4) throw std::invalid_argument("deck size must be at least 4");
  Rates r = base_;
  if (mode_ == RateMode::kWeaklyAsymmetric) r.b = base_.c + gamma_ / n;
  check_rate(r.a, "a_n");
  check_rate(r.b, "b_n");
  check_rate(r.c, "c_n");
  check_rate(r.d, "d_n");
  if (!(r.total() > 0.0)) throw std::invalid_argument("degenerate chain: total rate is zero");
  if (!(r.a > 0.0 || r.b > 0.0 || r.c > 0.0)) {
    throw std::invalid_argument("degenerate chain: no insertion move has positive rate");
  }
  return r;
}

Rates RateScheme::limit() const noexcept { return base_; }

double RateScheme::kappa() const noexcept { return base_.a + base_.b - base_.c; }

RateScheme RateScheme::with_beta(int beta) const {
  check_beta(beta);
  RateScheme copy = *this;
  copy.beta_ = beta;
  return copy;
}

RateScheme RateScheme::with_preset_name(std::string name) const {
  RateScheme copy = *this;
  copy.preset_ = std::move(name);
  return copy;
}

RateScheme preset_scheme(std::string_view name, double gamma, double c, double d) {
  if (name == "rudvalis") return RateScheme::rudvalis();
  if (name == "symmetric") return RateScheme::symmetric();
  if (name == "weak-asym") return RateScheme::weak_asym(gamma, c, d);
  throw std::invalid_argument("unknown rate preset '" + std::string(name) + "'");
}

}  // namespace rlab
