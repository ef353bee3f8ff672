#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>

namespace rlab {

/// Philox4x32-10 block function (Salmon et al., SC'11; Random123 reference).
/// Pure function of (counter, key); no hidden state.
struct Philox4x32 {
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static constexpr std::uint32_t kMul0 = 0xD2511F53u;
  static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
  static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
  static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

  static constexpr Counter block(Counter ctr, Key key) noexcept {
    for (int round = 0; round < 10; ++round) {
      if (round > 0) {
        key[0] += kWeyl0;
        key[1] += kWeyl1;
      }
      const std::uint64_t p0 = std::uint64_t{kMul0} * ctr[0];
      const std::uint64_t p1 = std::uint64_t{kMul1} * ctr[2];
      const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
      const auto lo0 = static_cast<std::uint32_t>(p0);
      const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
      const auto lo1 = static_cast<std::uint32_t>(p1);
      ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    }
    return ctr;
  }
};

/// Deterministic random stream built on Philox4x32-10.
///
/// The 64-bit seed is the Philox key. The counter is laid out as
///   word0      : block index, low 32 bits
///   word1      : block index bits 32..47 | domain << 16
///   word2/word3: stream id (e.g. replica index)
/// so every (seed, domain, stream) triple is an independent sequence and the
/// sequence for replica r never depends on how many replicas run or on which
/// thread runs it.
///
/// Transforms are written out explicitly (instead of std:: distributions) so
/// that draws are identical across standard library implementations:
///   uniform     : top 53 bits of a 64-bit word times 2^-53, in [0,1)
///   exponential : -log(1-U) / rate
///   normal      : Box-Muller, second variate cached
///   below(m)    : Lemire's multiply-shift with rejection (unbiased)
class Stream {
 public:
  using result_type = std::uint64_t;

  Stream() = default;
  explicit Stream(std::uint64_t seed, std::uint64_t stream_id = 0, std::uint16_t domain = 0) noexcept
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
        stream_id_(stream_id),
        domain_(domain) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept {
    if (cursor_ >= 4) refill();
    const std::uint64_t lo = buffer_[cursor_];
    const std::uint64_t hi = buffer_[cursor_ + 1];
    cursor_ += 2;
    return (hi << 32) | lo;
  }

  double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  double exponential(double rate) noexcept { return -std::log1p(-uniform()) / rate; }

  double normal() noexcept {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log1p(-u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound) noexcept {
    __uint128_t m = static_cast<__uint128_t>((*this)()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        m = static_cast<__uint128_t>((*this)()) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  bool bernoulli(double p) noexcept { return uniform() < p; }

  std::uint64_t blocks_consumed() const noexcept { return block_; }

 private:
  void refill() noexcept {
    const Philox4x32::Counter ctr{
        static_cast<std::uint32_t>(block_),
        static_cast<std::uint32_t>((block_ >> 32) & 0xFFFFu) | (std::uint32_t{domain_} << 16),
        static_cast<std::uint32_t>(stream_id_), static_cast<std::uint32_t>(stream_id_ >> 32)};
    buffer_ = Philox4x32::block(ctr, key_);
    ++block_;
    cursor_ = 0;
  }

  Philox4x32::Key key_{0, 0};
  std::uint64_t stream_id_ = 0;
  std::uint16_t domain_ = 0;
  std::uint64_t block_ = 0;
  Philox4x32::Counter buffer_{};
  unsigned cursor_ = 4;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Stream domains, so different consumers of one seed never overlap.
enum class StreamDomain : std::uint16_t {
  kParticle = 0,
  kSpde = 1,
  kOracleCheck = 2,
};

inline Stream make_stream(std::uint64_t seed, std::uint64_t stream_id, StreamDomain domain) {
  return Stream(seed, stream_id, static_cast<std::uint16_t>(domain));
}

}  // namespace rlab
