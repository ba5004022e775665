#pragma once

// Constructive winning strategies for the reversed Zeckendorf game:
//  * copycat: from a position with every height even, the second player
//    repeats each opponent move and wins;
//  * opening + copycat for n = F(i+1) + F(i-2): the first player combines
//    into 2F(i), then copies;
//  * the complete solution of positions made of ones, twos and threes.

#include <memory>
#include <optional>
#include <string>

#include "rzg/game_core.hpp"
#include "rzg/game_graph.hpp"
#include "rzg/policy.hpp"

namespace rzg {

using ZeckPolicy = Policy<ReversedZeckendorf>;

bool all_heights_even(const GameState& state);

// Returns `opponent_move`. `state` is the position after the opponent's move;
// throws StrategyError unless the position before it had all heights even.
Move copycat_respond(const GameState& state, const Move& opponent_move);

std::unique_ptr<ZeckPolicy> copycat_policy();

// Start position of the opening family: chips in bins i+1 and i-2.
GameState thm12_start(int i);

// Opens with Combine(i) from thm12_start(i), then mirrors. Throws
// StrategyError for i < 3; the first choose() throws if the start differs.
std::unique_ptr<ZeckPolicy> thm12_policy(int i);

// a ones, b twos, c threes.
struct TernaryState {
  Value a = 0;
  Value b = 0;
  Value c = 0;

  Value value() const { return a + 2 * b + 3 * c; }
  GameState to_game_state() const;
  // Throws DomainError if the position uses a bin above 3.
  static TernaryState from_game_state(const GameState& s);

  friend bool operator==(const TernaryState&, const TernaryState&) = default;
};

struct ParityClass {
  bool a_odd;
  bool b_odd;
  bool c_odd;
  std::optional<bool> a_greater;  // set only for OEE and EEO

  std::string name() const;  // e.g. "OEE(a>c)"
};

ParityClass parity_class(Value a, Value b, Value c);

// Player with a forced win when the first player is to move on (a, b, c).
Player classify123(Value a, Value b, Value c);
inline Player classify123(const TernaryState& t) { return classify123(t.a, t.b, t.c); }

// Winning move for the player to move. Throws NoWinningMoveError when the
// position is lost for the mover.
Move strategy123(const TernaryState& state);

std::unique_ptr<ZeckPolicy> strategy123_policy();

}  // namespace rzg
