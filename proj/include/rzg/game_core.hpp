#pragma once

// Positions and moves of the reversed Zeckendorf game.
//
// A position is a partition of n into Fibonacci parts, stored as bin heights
// (bin i holds chips worth F(i)). The reversed game starts at the Zeckendorf
// decomposition of n and ends when every chip sits in bin 1.

#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rzg/fibcore.hpp"

namespace rzg {

class GameState {
 public:
  // Strips trailing zero bins. Throws DomainError if every height is zero.
  explicit GameState(Heights heights);
  GameState(std::initializer_list<Value> heights) : GameState(Heights(heights)) {}

  static GameState from_zeckendorf(Value n) { return GameState(zeckendorf(n)); }

  // Parses the "0,1,0,1" encoding (low bin first). Throws std::invalid_argument
  // on malformed text and DomainError on an all-zero vector.
  static GameState parse(std::string_view text);

  // Height of bin i, 1-based; zero beyond the highest occupied bin.
  Value height(int bin) const {
    return bin >= 1 && static_cast<std::size_t>(bin) <= heights_.size()
               ? heights_[static_cast<std::size_t>(bin) - 1]
               : 0;
  }
  int max_bin() const { return static_cast<int>(heights_.size()); }
  const Heights& heights() const { return heights_; }
  Value value() const { return value_of(heights_); }

  std::string to_string() const;

  friend bool operator==(const GameState&, const GameState&) = default;
  friend auto operator<=>(const GameState&, const GameState&) = default;

 private:
  Heights heights_;
};

// Same as GameState's constructor but for callers holding a raw vector.
GameState canonical(Heights heights);

enum class MoveKind { kSplit, kCombine };

// Split(j), j >= 2: one chip of bin j becomes chips in bins j-1 and j-2
// (Split(2) turns a two into two ones).
// Combine(i), i >= 2: chips from bins i+1 and i-2 become two chips in bin i
// (Combine(2) takes a one and a three and makes two twos).
struct Move {
  MoveKind kind;
  int index;

  static constexpr Move split(int j) { return {MoveKind::kSplit, j}; }
  static constexpr Move combine(int i) { return {MoveKind::kCombine, i}; }

  std::string to_string() const;

  friend bool operator==(const Move&, const Move&) = default;
  friend auto operator<=>(const Move&, const Move&) = default;
};

// All legal reversed moves: Splits by ascending bin, then Combines by
// ascending bin. Empty exactly at terminal positions.
std::vector<Move> legal_moves_reversed(const GameState& state);

bool is_legal(const GameState& state, const Move& move);

// Throws IllegalMoveError naming the height that blocks the move.
GameState apply(const GameState& state, const Move& move);

// No chips above bin 1. The player to move there has lost.
bool is_terminal(const GameState& state);

// Lexicographic termination witness: every reversed move raises it. Splits
// add a chip, Combine(i) for i >= 3 adds one to the weighted sum, and
// Combine(2) leaves both alone but adds two chips to bin 2.
struct Potential {
  Value chips;
  Value weighted;  // sum of i * h_i
  Value twos;      // h_2

  friend bool operator==(const Potential&, const Potential&) = default;
  friend auto operator<=>(const Potential&, const Potential&) = default;
};

Potential potential(const GameState& state);

// Moves of the original (forward) Zeckendorf game, used to check that the
// reversed rules are exactly the transposed forward edges.
//
// Combine(1): 2F(1) -> F(2). Combine(i), i >= 2: F(i-1) + F(i) -> F(i+1).
// Split(2): 2F(2) -> F(3) + F(1). Split(i), i >= 3: 2F(i) -> F(i-2) + F(i+1).
struct ForwardMove {
  MoveKind kind;
  int index;

  std::string to_string() const;

  friend bool operator==(const ForwardMove&, const ForwardMove&) = default;
};

std::vector<ForwardMove> legal_moves_forward(const GameState& state);
GameState apply_forward(const GameState& state, const ForwardMove& move);

// Adapter used by the generic graph solver and strategy verifier.
struct ReversedZeckendorf {
  using State = GameState;
  using Move = rzg::Move;

  std::vector<Move> moves(const State& s) const { return legal_moves_reversed(s); }
  State apply(const State& s, const Move& m) const { return rzg::apply(s, m); }
};

}  // namespace rzg

template <>
struct std::hash<rzg::GameState> {
  std::size_t operator()(const rzg::GameState& s) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (const auto v : s.heights()) {
      h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }
};

template <>
struct std::hash<rzg::Move> {
  std::size_t operator()(const rzg::Move& m) const noexcept {
    return static_cast<std::size_t>(m.index) * 2 + (m.kind == rzg::MoveKind::kCombine);
  }
};
