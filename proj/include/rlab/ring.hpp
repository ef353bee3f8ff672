#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rlab/rates.hpp"

namespace rlab {

/// Fixed-size cyclic buffer with a movable logical origin.
///
/// Logical position p (1-based, 1 = top of the deck) lives at physical index
/// (origin + p - 1) mod n. Rotations only move the origin, so every shuffle
/// move costs O(1) regardless of n.
template <class T>
class CircularSlots {
 public:
  using value_type = T;

  std::size_t size() const noexcept { return slots_.size(); }
  std::size_t origin() const noexcept { return origin_; }

  /// Physical index of logical position p in [1, n].
  std::size_t physical(std::size_t p) const noexcept {
    std::size_t idx = origin_ + p - 1;
    return idx >= slots_.size() ? idx - slots_.size() : idx;
  }

  T operator()(std::size_t p) const noexcept { return slots_[physical(p)]; }

  /// Raw storage in physical order; combine with origin() to read logically.
  std::span<const T> physical_slots() const noexcept { return slots_; }

  /// Copy in logical order (position 1 first).
  std::vector<T> logical() const {
    std::vector<T> out(slots_.size());
    for (std::size_t p = 1; p <= slots_.size(); ++p) out[p - 1] = (*this)(p);
    return out;
  }

  void apply(MoveKind move) noexcept {
    switch (move) {
      case MoveKind::kTopToBottom:
        rotate_left();
        break;
      case MoveKind::kBottomToTop:
        rotate_right();
        break;
      case MoveKind::kSwapTopTwo:
        swap_logical(1, 2);
        break;
      case MoveKind::kTopToPenultimate:
        rotate_left();
        swap_logical(slots_.size() - 1, slots_.size());
        break;
    }
  }

  friend bool operator==(const CircularSlots& lhs, const CircularSlots& rhs) {
    if (lhs.size() != rhs.size()) return false;
    for (std::size_t p = 1; p <= lhs.size(); ++p) {
      if (lhs(p) != rhs(p)) return false;
    }
    return true;
  }

 protected:
  explicit CircularSlots(std::vector<T> logical_slots) : slots_(std::move(logical_slots)) {
    if (slots_.size() < 4) throw std::invalid_argument("deck size must be at least 4");
  }

  T& mutable_at(std::size_t p) noexcept { return slots_[physical(p)]; }

 private:
  // Logical p now shows what was at p+1: the top card went to the bottom.
  void rotate_left() noexcept { origin_ = origin_ + 1 == slots_.size() ? 0 : origin_ + 1; }
  void rotate_right() noexcept { origin_ = origin_ == 0 ? slots_.size() - 1 : origin_ - 1; }
  void swap_logical(std::size_t p, std::size_t q) noexcept { std::swap(slots_[physical(p)], slots_[physical(q)]); }

  std::vector<T> slots_;
  std::size_t origin_ = 0;
};

/// Occupancy configuration eta in {0,1}^{Z_n}; eta(p) = 1 means a black card (particle).
class OccupancyState : public CircularSlots<std::uint8_t> {
 public:
  /// bits[p-1] = eta(p). Values other than 0/1 are rejected.
  explicit OccupancyState(std::vector<std::uint8_t> bits);

  static OccupancyState zeros(std::size_t n) { return OccupancyState(std::vector<std::uint8_t>(n, 0)); }
  static OccupancyState ones(std::size_t n) { return OccupancyState(std::vector<std::uint8_t>(n, 1)); }

  std::size_t particle_count() const noexcept;
};

/// A deck of n cards labelled 1..n.
class DeckState : public CircularSlots<std::uint32_t> {
 public:
  /// Identity arrangement: card p at position p.
  explicit DeckState(std::size_t n);
  /// cards[p-1] is the card at position p; must be a permutation of 1..n.
  explicit DeckState(std::vector<std::uint32_t> cards);

  /// Colour projection; black[card-1] != 0 marks a black card.
  OccupancyState project(std::span<const std::uint8_t> black) const;
};

}  // namespace rlab
