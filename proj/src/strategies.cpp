#include "rzg/strategies.hpp"

#include "rzg/errors.hpp"

namespace rzg {
namespace {

// Position before `m` was played to reach `after`, or nullopt if no such
// position exists.
std::optional<Heights> undo(const GameState& after, const Move& m) {
  Heights h = after.heights();
  const auto at = [&](int bin) -> Value& {
    if (h.size() < static_cast<std::size_t>(bin)) h.resize(static_cast<std::size_t>(bin), 0);
    return h[static_cast<std::size_t>(bin) - 1];
  };
  const auto take = [&](int bin, Value k) {
    if (at(bin) < k) return false;
    at(bin) -= k;
    return true;
  };
  if (m.index < 2) return std::nullopt;
  if (m.kind == MoveKind::kSplit) {
    const bool ok = m.index == 2 ? take(1, 2) : take(m.index - 1, 1) && take(m.index - 2, 1);
    if (!ok) return std::nullopt;
    at(m.index) += 1;
  } else {
    if (!take(m.index, 2)) return std::nullopt;
    at(m.index + 1) += 1;
    at(m.index == 2 ? 1 : m.index - 2) += 1;
  }
  return h;
}

class CopycatPolicy final : public ZeckPolicy {
 public:
  Move choose(const GameState& s, const std::optional<Move>& last) override {
    if (!last) throw StrategyError("copycat needs an opponent move to copy");
    return copycat_respond(s, *last);
  }
  std::unique_ptr<ZeckPolicy> clone() const override { return std::make_unique<CopycatPolicy>(*this); }
};

class OpeningThenCopycat final : public ZeckPolicy {
 public:
  explicit OpeningThenCopycat(int i) : i_(i) {}

  Move choose(const GameState& s, const std::optional<Move>& last) override {
    if (!opened_) {
      if (last || s != thm12_start(i_)) {
        throw StrategyError("opening for i=" + std::to_string(i_) + " expects start " +
                            thm12_start(i_).to_string() + ", got " + s.to_string());
      }
      opened_ = true;
      return Move::combine(i_);
    }
    if (!last) throw StrategyError("copycat needs an opponent move to copy");
    return copycat_respond(s, *last);
  }
  std::unique_ptr<ZeckPolicy> clone() const override {
    return std::make_unique<OpeningThenCopycat>(*this);
  }
  std::uint64_t memo_key() const override { return opened_; }

 private:
  int i_;
  bool opened_ = false;
};

class TernaryPolicy final : public ZeckPolicy {
 public:
  Move choose(const GameState& s, const std::optional<Move>&) override {
    return strategy123(TernaryState::from_game_state(s));
  }
  std::unique_ptr<ZeckPolicy> clone() const override { return std::make_unique<TernaryPolicy>(*this); }
};

}  // namespace

bool all_heights_even(const GameState& state) {
  for (const Value h : state.heights()) {
    if (h % 2 != 0) return false;
  }
  return true;
}

Move copycat_respond(const GameState& state, const Move& opponent_move) {
  const auto before = undo(state, opponent_move);
  if (!before) {
    throw StrategyError(opponent_move.to_string() + " cannot have led to " + state.to_string());
  }
  for (std::size_t i = 0; i < before->size(); ++i) {
    if ((*before)[i] % 2 != 0) {
      throw StrategyError("copycat precondition: h_" + std::to_string(i + 1) +
                          " was odd before " + opponent_move.to_string());
    }
  }
  if (!is_legal(state, opponent_move)) {
    throw StrategyError("copycat reply " + opponent_move.to_string() + " is not legal at " +
                        state.to_string());
  }
  return opponent_move;
}

std::unique_ptr<ZeckPolicy> copycat_policy() { return std::make_unique<CopycatPolicy>(); }

GameState thm12_start(int i) {
  if (i < 3) throw StrategyError("opening family needs i >= 3");
  Heights h(static_cast<std::size_t>(i) + 1, 0);
  h[static_cast<std::size_t>(i)] = 1;      // bin i+1
  h[static_cast<std::size_t>(i) - 3] = 1;  // bin i-2
  return GameState(std::move(h));
}

std::unique_ptr<ZeckPolicy> thm12_policy(int i) {
  thm12_start(i);
  return std::make_unique<OpeningThenCopycat>(i);
}

GameState TernaryState::to_game_state() const { return GameState({a, b, c}); }

TernaryState TernaryState::from_game_state(const GameState& s) {
  if (s.max_bin() > 3) {
    throw DomainError("position " + s.to_string() + " has chips above bin 3");
  }
  return {s.height(1), s.height(2), s.height(3)};
}

std::string ParityClass::name() const {
  std::string out;
  out += a_odd ? 'O' : 'E';
  out += b_odd ? 'O' : 'E';
  out += c_odd ? 'O' : 'E';
  if (a_greater) out += *a_greater ? "(a>c)" : "(a<c)";
  return out;
}

ParityClass parity_class(Value a, Value b, Value c) {
  ParityClass p{a % 2 == 1, b % 2 == 1, c % 2 == 1, std::nullopt};
  if (!p.b_odd && p.a_odd != p.c_odd) p.a_greater = a > c;
  return p;
}

Player classify123(Value a, Value b, Value c) {
  const ParityClass p = parity_class(a, b, c);
  if (p.b_odd) return Player::kP1;                                      // OOO EOE EOO OOE
  if (p.a_odd == p.c_odd) return p.a_odd ? Player::kP1 : Player::kP2;   // OEO / EEE
  if (p.a_odd) return *p.a_greater ? Player::kP2 : Player::kP1;         // OEE
  return *p.a_greater ? Player::kP1 : Player::kP2;                      // EEO
}

Move strategy123(const TernaryState& t) {
  const auto [a, b, c] = t;
  if (classify123(a, b, c) != Player::kP1) {
    throw NoWinningMoveError("no winning move: (" + std::to_string(a) + "," + std::to_string(b) +
                             "," + std::to_string(c) + ") is lost for the mover");
  }
  const ParityClass p = parity_class(a, b, c);
  if (p.a_odd && p.b_odd && p.c_odd) return Move::split(3);
  if (!p.a_odd && p.b_odd && !p.c_odd) return Move::split(2);
  if (!p.a_odd && p.b_odd && p.c_odd) return a + 2 > c ? Move::split(3) : Move::split(2);
  if (p.a_odd && p.b_odd && !p.c_odd) return a + 2 > c ? Move::split(2) : Move::split(3);
  // OEO, OEE with a<c and EEO with a>c all combine a one with a three.
  return Move::combine(2);
}

std::unique_ptr<ZeckPolicy> strategy123_policy() { return std::make_unique<TernaryPolicy>(); }

}  // namespace rzg
