#include "rzg/buildup.hpp"

#include "rzg/errors.hpp"

namespace rzg {

BuildUpState BuildUpState::initial(Value n) {
  if (n == 0) throw DomainError("build-up target must be positive");
  return {{0, 0, 0}, n};
}

std::string BuildUpState::to_string() const {
  return "(" + std::to_string(counts.a) + "," + std::to_string(counts.b) + "," +
         std::to_string(counts.c) + ")" + (placing() ? " remaining " + std::to_string(remaining) : "");
}

std::string BuildUpMove::to_string() const {
  return is_place() ? "Place(" + std::to_string(placed()) + ")" : game_move().to_string();
}

std::vector<BuildUpMove> BuildUpGame::moves(const BuildUpState& s) const {
  std::vector<BuildUpMove> out;
  if (s.placing()) {
    for (int v = 1; v <= 3 && static_cast<Value>(v) <= s.remaining; ++v) out.push_back(BuildUpMove::place(v));
    return out;
  }
  if (s.counts.value() == 0) return out;
  for (const rzg::Move& m : legal_moves_reversed(s.counts.to_game_state())) out.push_back(BuildUpMove::play(m));
  return out;
}

BuildUpState BuildUpGame::apply(const BuildUpState& s, const BuildUpMove& m) const {
  if (m.is_place()) {
    const int v = m.placed();
    if (!s.placing() || v < 1 || v > 3 || static_cast<Value>(v) > s.remaining) {
      throw IllegalMoveError(m.to_string() + " is illegal at " + s.to_string());
    }
    BuildUpState next = s;
    next.remaining -= static_cast<Value>(v);
    (v == 1 ? next.counts.a : v == 2 ? next.counts.b : next.counts.c) += 1;
    return next;
  }
  if (s.placing()) throw IllegalMoveError(m.to_string() + " played before placement finished");
  const GameState after = rzg::apply(s.counts.to_game_state(), m.game_move());
  return {TernaryState::from_game_state(after), 0};
}

Player buildup_winner(Value n) {
  if (n == 0) throw DomainError("build-up target must be positive");
  return n == 4 || n % 2 == 1 ? Player::kP1 : Player::kP2;
}

Player buildup_exhaustive(Value n) {
  if (n == 0 || n > kBuildUpExhaustiveLimit) {
    throw RangeError("buildup_exhaustive supports n in [1, 25]");
  }
  const auto g = GameGraph<BuildUpGame>::build(BuildUpGame{}, BuildUpState::initial(n));
  return label_positions(g)[g.start()] == Label::kWin ? Player::kP1 : Player::kP2;
}

namespace {

// Replies by residue class of n mod 4. `r` is what remains after the
// opponent's placement `v`; `before` = r + v is what the opponent faced.
class NimDownPolicy final : public BuildUpPolicy {
 public:
  explicit NimDownPolicy(Value n) : n_(n) {}

  BuildUpMove choose(const BuildUpState& s, const std::optional<BuildUpMove>& last) override {
    if (!s.placing()) return BuildUpMove::play(strategy123(s.counts));
    if (!last) return BuildUpMove::place(opening());
    if (!last->is_place()) throw StrategyError("placement after a game move");
    const Value r = s.remaining;
    const int v = last->placed();
    const Value before = r + static_cast<Value>(v);
    if (r == 1) return BuildUpMove::place(1);
    const int reply = respond(s, before, v);
    if (reply == 0) {
      throw StrategyError("n=" + std::to_string(n_) + ": no scripted reply to Place(" +
                          std::to_string(v) + ") at " + s.to_string());
    }
    return BuildUpMove::place(reply);
  }

  std::unique_ptr<BuildUpPolicy> clone() const override { return std::make_unique<NimDownPolicy>(*this); }

 private:
  int opening() const {
    if (n_ == 1) return 1;
    if (n_ == 4) return 3;
    if (n_ == 5 || n_ % 4 == 3) return 2;
    if (n_ % 4 == 1) return 3;
    throw StrategyError("n=" + std::to_string(n_) + ": the first player has no winning opening");
  }

  int respond(const BuildUpState& s, Value before, int v) const {
    const bool a_even = s.counts.a % 2 == 0;
    const auto other_of = [v](int x, int y) { return v == x ? y : x; };
    switch (n_ % 4) {
      case 3:
        return 4 - v;
      case 1:
        if (n_ == 5) return before == 3 && v != 3 ? 3 - v : 0;
        [[fallthrough]];
      case 2:
        // n = 1 mod 4 after the opening 3 behaves like n = 2 mod 4 with the
        // roles swapped; only the split on a single placed 1 differs.
        if (before > 6) return 4 - v;
        if (before == 6) {
          if (v == 1) return (n_ % 4 == 1) == a_even ? 2 : 3;
          return other_of(2, 3);
        }
        if (before == 3) return v == 3 ? 0 : 3 - v;
        if (before == 2) return v == 1 ? 1 : 0;
        return 0;
      case 0:
        if (before > 8) return 4 - v;
        if (before == 8) {
          const bool base_even = (s.counts.a - (v == 1 ? 1 : 0)) % 2 == 0;
          if (base_even) return v == 2 ? 1 : 4 - v;
          return v == 1 ? 2 : other_of(2, 3);
        }
        if (before == 4) return v == 2 ? 1 : 4 - v;
        if (before == 5) return v == 2 ? 2 : 4 - v;
        if (before == 3) return v == 3 ? 0 : 3 - v;
        return 0;
    }
    return 0;
  }

  Value n_;
};

}  // namespace

std::unique_ptr<BuildUpPolicy> buildup_policy(Value n, Player side) {
  if (side != buildup_winner(n)) {
    throw StrategyError("n=" + std::to_string(n) + ": " + player_name(side) +
                        " has no winning build-up strategy");
  }
  return std::make_unique<NimDownPolicy>(n);
}

}  // namespace rzg
