#include <gtest/gtest.h>

#include <algorithm>
#include <bit>
#include <numeric>

#include "rlab/oracle.hpp"
#include "rlab/ring.hpp"
#include "rlab/rng.hpp"

namespace rlab {
namespace {

// Moves written on a plain array, position p at index p-1.
template <class T>
std::vector<T> literal_move(std::vector<T> v, MoveKind move) {
  const std::size_t n = v.size();
  std::vector<T> out = v;
  switch (move) {
    case MoveKind::kTopToBottom:  // sigma^{1->n}
      for (std::size_t p = 1; p < n; ++p) out[p - 1] = v[p];
      out[n - 1] = v[0];
      break;
    case MoveKind::kTopToPenultimate:  // sigma^{1->n-1}
      for (std::size_t p = 1; p + 1 < n; ++p) out[p - 1] = v[p];
      out[n - 2] = v[0];
      out[n - 1] = v[n - 1];
      break;
    case MoveKind::kBottomToTop:  // sigma^{n->1}
      out[0] = v[n - 1];
      for (std::size_t p = 2; p <= n; ++p) out[p - 1] = v[p - 2];
      break;
    case MoveKind::kSwapTopTwo:
      std::swap(out[0], out[1]);
      break;
  }
  return out;
}

std::vector<std::uint8_t> bits_of(unsigned mask, std::size_t n) {
  std::vector<std::uint8_t> bits(n);
  for (std::size_t p = 0; p < n; ++p) bits[p] = (mask >> p) & 1u;
  return bits;
}

OccupancyState occ(std::vector<std::uint8_t> bits) { return OccupancyState(std::move(bits)); }

TEST(Moves, SingleParticleTopToBottom) {
  auto s = occ({1, 0, 0, 0});
  s.apply(MoveKind::kTopToBottom);
  EXPECT_EQ(s.logical(), (std::vector<std::uint8_t>{0, 0, 0, 1}));
}

TEST(Moves, SingleParticleTopToPenultimate) {
  auto s = occ({1, 0, 0, 0});
  s.apply(MoveKind::kTopToPenultimate);
  EXPECT_EQ(s.logical(), (std::vector<std::uint8_t>{0, 0, 1, 0}));
}

TEST(Moves, SwapTopTwo) {
  auto s = occ({1, 0, 1, 0});
  s.apply(MoveKind::kSwapTopTwo);
  EXPECT_EQ(s.logical(), (std::vector<std::uint8_t>{0, 1, 1, 0}));
}

TEST(Moves, RejectsSmallDecks) {
  EXPECT_THROW(occ({1, 0, 1}), std::invalid_argument);
  EXPECT_THROW(DeckState(3), std::invalid_argument);
  EXPECT_THROW(occ({1, 0, 2, 0}), std::invalid_argument);
  EXPECT_THROW(DeckState(std::vector<std::uint32_t>{1, 2, 2, 4}), std::invalid_argument);
}

TEST(Moves, TopToBottomThenBottomToTopIsIdentityN6) {
  for (unsigned mask = 0; mask < 64; ++mask) {
    auto s = occ(bits_of(mask, 6));
    s.apply(MoveKind::kTopToBottom);
    s.apply(MoveKind::kBottomToTop);
    ASSERT_EQ(s.logical(), bits_of(mask, 6)) << mask;
  }
}

// Every move on every state for n <= 10, against the literal definitions,
// also after the origin has wandered.
TEST(Moves, MatchLiteralDefinitionsExhaustively) {
  for (std::size_t n = 4; n <= 10; ++n) {
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      const auto bits = bits_of(mask, n);
      for (MoveKind move : kAllMoves) {
        auto s = occ(bits);
        for (std::size_t r = 0; r < mask % n; ++r) s.apply(MoveKind::kTopToBottom);
        auto rotated = s.logical();
        s.apply(move);
        ASSERT_EQ(s.logical(), literal_move(rotated, move)) << "n=" << n << " mask=" << mask;
        ASSERT_EQ(s.particle_count(), static_cast<std::size_t>(std::popcount(mask)));
      }
    }
  }
}

TEST(Moves, PenultimateIsBottomThenSwapLastTwoN8) {
  for (unsigned mask = 0; mask < 256; ++mask) {
    auto composite = literal_move(bits_of(mask, 8), MoveKind::kTopToBottom);
    std::swap(composite[6], composite[7]);
    auto s = occ(bits_of(mask, 8));
    s.apply(MoveKind::kTopToPenultimate);
    ASSERT_EQ(s.logical(), composite);
  }
}

TEST(Moves, AgreeWithOracleBitmaskMoves) {
  for (int n = 4; n <= 9; ++n) {
    for (oracle::StateIndex mask = 0; mask < (1u << n); ++mask) {
      for (MoveKind move : kAllMoves) {
        auto s = occ(bits_of(mask, static_cast<std::size_t>(n)));
        s.apply(move);
        ASSERT_EQ(s.logical(), bits_of(oracle::apply_move(mask, n, move), static_cast<std::size_t>(n)));
      }
    }
  }
}

TEST(Deck, MovesArePermutationsMatchingLiteral) {
  Stream rng(11);
  for (std::size_t n : {4u, 5u, 8u, 13u}) {
    std::vector<std::uint32_t> cards(n);
    std::iota(cards.begin(), cards.end(), 1u);
    DeckState deck(cards);
    std::vector<std::uint32_t> mirror = cards;
    for (int step = 0; step < 200; ++step) {
      const MoveKind move = kAllMoves[rng.below(4)];
      deck.apply(move);
      mirror = literal_move(mirror, move);
      ASSERT_EQ(deck.logical(), mirror);
    }
    auto sorted = deck.logical();
    std::sort(sorted.begin(), sorted.end());
    EXPECT_EQ(sorted, cards);
  }
}

TEST(Deck, ProjectionCommutesWithMoves) {
  Stream rng(12);
  const std::size_t n = 9;
  std::vector<std::uint8_t> black(n);
  for (auto& b : black) b = static_cast<std::uint8_t>(rng.below(2));
  DeckState deck(n);
  OccupancyState projected = deck.project(black);
  for (int step = 0; step < 500; ++step) {
    const MoveKind move = kAllMoves[rng.below(4)];
    deck.apply(move);
    projected.apply(move);
    ASSERT_EQ(deck.project(black), projected);
  }
}

}  // namespace
}  // namespace rlab
