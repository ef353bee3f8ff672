#include "rlab/ring.hpp"

#include <algorithm>
#include <numeric>

namespace rlab {

OccupancyState::OccupancyState(std::vector<std::uint8_t> bits) : CircularSlots(std::move(bits)) {
  for (std::uint8_t bit : physical_slots()) {
    if (bit > 1) throw std::invalid_argument("occupancy values must be 0 or 1");
  }
}

std::size_t OccupancyState::particle_count() const noexcept {
  std::size_t count = 0;
  for (std::uint8_t bit : physical_slots()) count += bit;
  return count;
}

namespace {

std::vector<std::uint32_t> identity_cards(std::size_t n) {
  std::vector<std::uint32_t> cards(n);
  std::iota(cards.begin(), cards.end(), 1u);
  return cards;
}

}  // namespace

DeckState::DeckState(std::size_t n) : CircularSlots(identity_cards(n)) {}

DeckState::DeckState(std::vector<std::uint32_t> cards) : CircularSlots(std::move(cards)) {
  std::vector<std::uint8_t> seen(size() + 1, 0);
  for (std::uint32_t card : physical_slots()) {
    if (card == 0 || card > size() || seen[card]) {
      throw std::invalid_argument("deck must be a permutation of 1..n");
    }
    seen[card] = 1;
  }
}

OccupancyState DeckState::project(std::span<const std::uint8_t> black) const {
  if (black.size() != size()) throw std::invalid_argument("colouring size must equal deck size");
  std::vector<std::uint8_t> bits(size());
  for (std::size_t p = 1; p <= size(); ++p) bits[p - 1] = black[(*this)(p) - 1] != 0 ? 1 : 0;
  return OccupancyState(std::move(bits));
}

}  // namespace rlab
