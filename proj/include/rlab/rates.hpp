#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

namespace rlab {

/// The four moves of the generalized Rudvalis shuffle, in rate order (a, b, c, d).
enum class MoveKind : std::uint8_t {
  kTopToPenultimate = 0,  // card 1 -> position n-1, rate a_n
  kTopToBottom = 1,       // card 1 -> position n,   rate b_n
  kBottomToTop = 2,       // card n -> position 1,   rate c_n
  kSwapTopTwo = 3,        // cards 1 <-> 2,          rate d_n
};

inline constexpr std::array<MoveKind, 4> kAllMoves{MoveKind::kTopToPenultimate, MoveKind::kTopToBottom,
                                                   MoveKind::kBottomToTop, MoveKind::kSwapTopTwo};

std::string_view to_string(MoveKind move) noexcept;

/// Rates realized at a given deck size.
struct Rates {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;

  double total() const noexcept { return a + b + c + d; }
  double of(MoveKind move) const noexcept { return std::array{a, b, c, d}[static_cast<std::size_t>(move)]; }
};

enum class RateMode { kFixed, kWeaklyAsymmetric };

/// Rate sequences (a_n, b_n, c_n, d_n) together with the time-scale exponent.
///
/// Fixed mode uses the same four rates at every n. Weakly-asymmetric mode
/// realizes a_n = 0, b_n = c + gamma/n, c_n = c, d_n = d so that
/// a_n + b_n - c_n = gamma/n exactly.
class RateScheme {
 public:
  static RateScheme fixed(double a, double b, double c, double d, int beta);
  static RateScheme weakly_asymmetric(double c, double gamma, double d, int beta = 2);

  /// a = b = 1/2, c = d = 0 (hyperbolic scale by default).
  static RateScheme rudvalis(int beta = 1);
  /// a = 0, b = c = d = 1/4 (diffusive scale by default).
  static RateScheme symmetric(int beta = 2);
  static RateScheme weak_asym(double gamma = 1.0, double c = 0.25, double d = 0.0);

  /// Throws std::invalid_argument if any realized rate leaves [0,1], the total
  /// rate vanishes, or no insertion move (a, b or c) is active.
  Rates at(int n) const;

  RateMode mode() const noexcept { return mode_; }
  int beta() const noexcept { return beta_; }
  double gamma() const noexcept { return gamma_; }
  const std::string& preset() const noexcept { return preset_; }

  /// Limit rates (n -> infinity).
  Rates limit() const noexcept;
  /// a + b - c of the limit rates; the transport speed at beta = 1.
  double kappa() const noexcept;

  RateScheme with_beta(int beta) const;
  RateScheme with_preset_name(std::string name) const;

 private:
  RateScheme(RateMode mode, Rates rates, int beta, double gamma);

  RateMode mode_;
  Rates base_;
  int beta_;
  double gamma_;
  std::string preset_;
};

/// Expands "rudvalis", "symmetric" or "weak-asym"; throws std::invalid_argument otherwise.
RateScheme preset_scheme(std::string_view name, double gamma = 1.0, double c = 0.25, double d = 0.0);

}  // namespace rlab
