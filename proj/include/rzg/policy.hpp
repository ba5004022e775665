#pragma once

#include <cstdint>
#include <memory>
#include <optional>

namespace rzg {

// A move chooser for one side of a game. It sees the position it must move
// in and the opponent's previous move (absent on an opening move), and may
// keep private state between calls.
template <class Game>
class Policy {
 public:
  using State = typename Game::State;
  using Move = typename Game::Move;

  virtual ~Policy() = default;

  virtual Move choose(const State& current, const std::optional<Move>& last_opponent_move) = 0;
  virtual std::unique_ptr<Policy> clone() const = 0;

  // Fingerprint of the private state. Two copies with equal keys must choose
  // identically from then on; the verifier uses it to share work.
  virtual std::uint64_t memo_key() const { return 0; }
};

}  // namespace rzg
