#pragma once

// Build Up 1-2-3: players alternately put down a 1, 2 or 3 until the total is
// exactly n, then play the reversed Zeckendorf game on the resulting counts.
// The player who did not place last makes the first game move, so the whole
// thing is one normal-play impartial game.

#include <compare>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "rzg/game_core.hpp"
#include "rzg/game_graph.hpp"
#include "rzg/policy.hpp"
#include "rzg/strategies.hpp"

namespace rzg {

inline constexpr Value kBuildUpExhaustiveLimit = 25;

struct BuildUpState {
  TernaryState counts;
  Value remaining = 0;

  static BuildUpState initial(Value n);

  bool placing() const { return remaining > 0; }
  Value total() const { return counts.value() + remaining; }
  std::string to_string() const;

  friend bool operator==(const BuildUpState&, const BuildUpState&) = default;
};

struct Place {
  int value;

  friend bool operator==(const Place&, const Place&) = default;
};

struct BuildUpMove {
  std::variant<Place, Move> action;

  static BuildUpMove place(int v) { return {Place{v}}; }
  static BuildUpMove play(Move m) { return {m}; }

  bool is_place() const { return std::holds_alternative<Place>(action); }
  int placed() const { return std::get<Place>(action).value; }
  const Move& game_move() const { return std::get<Move>(action); }
  std::string to_string() const;

  friend bool operator==(const BuildUpMove&, const BuildUpMove&) = default;
};

struct BuildUpGame {
  using State = BuildUpState;
  using Move = BuildUpMove;

  // Placements never overshoot: v <= remaining.
  std::vector<Move> moves(const State& s) const;
  // Throws IllegalMoveError for moves outside moves(s).
  State apply(const State& s, const Move& m) const;
};

using BuildUpPolicy = Policy<BuildUpGame>;

// P1 when n == 4 or n is odd, otherwise P2.
Player buildup_winner(Value n);

// Minimax over the combined placing and playing phases, n in [1, 25].
Player buildup_exhaustive(Value n);

// Nim-down strategy for `side`, which must be buildup_winner(n); otherwise
// throws StrategyError. Playing-phase moves come from strategy123.
std::unique_ptr<BuildUpPolicy> buildup_policy(Value n, Player side);
inline std::unique_ptr<BuildUpPolicy> buildup_policy(Value n) {
  return buildup_policy(n, buildup_winner(n));
}

}  // namespace rzg

template <>
struct std::hash<rzg::BuildUpState> {
  std::size_t operator()(const rzg::BuildUpState& s) const noexcept {
    std::size_t h = s.remaining;
    for (const auto v : {s.counts.a, s.counts.b, s.counts.c}) h = h * 0x100000001b3ULL ^ v;
    return h;
  }
};
