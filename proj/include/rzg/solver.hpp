#pragma once

// Exhaustive solving of the reversed Zeckendorf game from any start.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "rzg/game_core.hpp"
#include "rzg/game_graph.hpp"

namespace rzg {

using ZeckGraph = GameGraph<ReversedZeckendorf>;

struct SolveResult {
  Value n = 0;
  GameState start{1};
  Player winner = Player::kP2;
  std::size_t edge_count = 0;
  std::size_t vertex_count = 0;
  std::shared_ptr<const ZeckGraph> graph;
  std::vector<Label> labels;

  // Throws LookupError for positions outside the solved graph.
  Label label(const GameState& state) const;
};

struct SolveOptions {
  std::size_t max_nodes = 0;  // 0: unbounded
};

SolveResult solve(const GameState& start, const SolveOptions& options = {});
inline SolveResult solve(Value n, const SolveOptions& options = {}) {
  return solve(GameState::from_zeckendorf(n), options);
}

// Moves to positions labelled Loss, in legal-move order; the first one is the
// engine's choice. Empty when `state` is itself a loss (or terminal).
std::vector<Move> optimal_moves(const GameState& state, const SolveResult& result);

int shortest_game(const GameState& start);
int longest_game(const GameState& start);

// floor(phi^2 n - Z_I(n) - 2 Z(n) + phi - 1).
std::int64_t length_upper_bound(Value n);

struct TableRow {
  Value n;
  Player winner;
  std::size_t edges;
  std::size_t vertices;
};

// Solves zeckendorf(n) for n in [lo, hi]. Rows reach `on_row` in increasing n
// as soon as every smaller n is done, whatever the thread count.
std::vector<TableRow> winner_table(Value lo, Value hi, unsigned threads = 1,
                                   const std::function<void(const TableRow&)>& on_row = {});

struct WinFraction {
  std::size_t p1_wins;
  std::size_t games;

  double value() const { return games == 0 ? 0.0 : static_cast<double>(p1_wins) / games; }
};

WinFraction win_fraction(Value lo, Value hi, unsigned threads = 1);
WinFraction win_fraction(const std::vector<TableRow>& rows);

}  // namespace rzg
