#pragma once

// Reversed Chomp on an N-row, M-column board (N >= M). A position is a
// downward-closed set of filled squares, stored as M nonincreasing column
// heights. Play starts with only the poisoned corner filled and ends at the
// full board; a move is any forward Chomp bite read backwards.

#include <compare>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rzg/game_graph.hpp"
#include "rzg/policy.hpp"

namespace rzg {

inline constexpr int kChompMaxSide = 7;

class ChompBoard {
 public:
  // Validates shape and staircase heights. Boards with rows < cols are
  // transposed so that rows() >= cols() always holds.
  ChompBoard(int rows, int cols, std::vector<int> heights);

  // Only the poisoned square filled.
  static ChompBoard initial(int rows, int cols);
  static ChompBoard full(int rows, int cols);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const std::vector<int>& heights() const { return heights_; }
  int height(int col) const { return heights_[static_cast<std::size_t>(col)]; }
  bool is_full() const;
  int filled() const;

  std::string to_string() const;

  friend bool operator==(const ChompBoard&, const ChompBoard&) = default;

 private:
  int rows_;
  int cols_;
  std::vector<int> heights_;
};

// A reversed move is identified by the position it produces.
using ChompMove = ChompBoard;

// True iff a single forward bite on `after` yields `before`.
bool is_chomp_move(const ChompBoard& before, const ChompBoard& after);

// Every legal successor, ordered by heights (lexicographic).
std::vector<ChompMove> chomp_moves(const ChompBoard& state);

struct ChompGame {
  using State = ChompBoard;
  using Move = ChompMove;

  std::vector<Move> moves(const State& s) const { return chomp_moves(s); }
  // Throws IllegalMoveError unless is_chomp_move(s, m).
  State apply(const State& s, const Move& m) const;
};

// Retrograde solution for 1 <= cols <= rows <= 7 (after transposition),
// excluding the 1x1 board.
Player chomp_solve(int rows, int cols);

// Constructive strategy. `position` is the position the strategy's side last
// left (the initial board before anyone moved); `last_opponent_move` is the
// opponent's reply to it, absent only for the one-column opening.
//  * one column: the first player fills the column;
//  * otherwise the second player keeps the position as "full columns on the
//    left, full rows below, one filled corner in the remaining rectangle" and
//    shrinks that rectangle after every opponent move.
// Throws StrategyError outside these positions.
ChompMove chomp_strategy(const ChompBoard& position, const std::optional<ChompMove>& last_opponent_move);

// Winning side for chomp_strategy: P1 for one column, otherwise P2.
std::unique_ptr<Policy<ChompGame>> chomp_policy(int rows, int cols);

}  // namespace rzg

template <>
struct std::hash<rzg::ChompBoard> {
  std::size_t operator()(const rzg::ChompBoard& b) const noexcept {
    std::size_t h = static_cast<std::size_t>(b.rows()) * 31 + static_cast<std::size_t>(b.cols());
    for (const int v : b.heights()) h = h * 0x100000001b3ULL ^ static_cast<std::size_t>(v);
    return h;
  }
};
