#include <doctest.h>

#include <functional>
#include <vector>

#include "rzg/errors.hpp"
#include "rzg/solver.hpp"
#include "rzg/strategies.hpp"
#include "rzg/verify.hpp"
#include "oracles.hpp"

using namespace rzg;
using rzg::testing::even_starts;

namespace {

class FirstLegal final : public ZeckPolicy {
 public:
  Move choose(const GameState& s, const std::optional<Move>&) override { return legal_moves_reversed(s).front(); }
  std::unique_ptr<ZeckPolicy> clone() const override { return std::make_unique<FirstLegal>(); }
};

}  // namespace

TEST_CASE("copycat responses") {
  CHECK(copycat_respond({1, 1, 1}, Move::split(3)) == Move::split(3));
  CHECK(apply({1, 1, 1}, Move::split(3)) == GameState{2, 2});
  CHECK(copycat_respond({2, 1}, Move::split(2)) == Move::split(2));
  CHECK(apply({2, 1}, Move::split(2)) == GameState{4});
  CHECK(copycat_respond({1, 2, 1}, Move::combine(2)) == Move::combine(2));
  CHECK(apply({1, 2, 1}, Move::combine(2)) == GameState{0, 4});
  // (1,1,1) after Split(2) came from (0,2,1), which has an odd height.
  CHECK_THROWS_AS(copycat_respond({2, 1, 1}, Move::split(2)), StrategyError);
  CHECK_THROWS_AS(copycat_respond({1}, Move::split(2)), StrategyError);
}

TEST_CASE("copycat closure on all-even positions") {
  for (const auto& s : even_starts(30)) {
    for (const auto& m : legal_moves_reversed(s)) {
      const GameState once = apply(s, m);
      REQUIRE(is_legal(once, m));
      CHECK(all_heights_even(apply(once, m)));
    }
  }
}

TEST_CASE("opening family") {
  CHECK(thm12_start(3) == GameState{1, 0, 0, 1});
  CHECK(thm12_start(4) == GameState{0, 1, 0, 0, 1});
  CHECK(thm12_start(3).value() == 6);
  CHECK(thm12_start(5).value() == 16);
  CHECK(thm12_start(6).value() == 26);
  CHECK_THROWS_AS(thm12_start(2), StrategyError);

  auto p3 = thm12_policy(3);
  CHECK(p3->choose(thm12_start(3), std::nullopt) == Move::combine(3));
  CHECK(apply(thm12_start(3), Move::combine(3)) == GameState{0, 0, 2});
  auto p4 = thm12_policy(4);
  CHECK(p4->choose(thm12_start(4), std::nullopt) == Move::combine(4));
  CHECK(apply(thm12_start(4), Move::combine(4)) == GameState{0, 0, 0, 2});
  auto wrong = thm12_policy(3);
  CHECK_THROWS_AS(wrong->choose(GameState{0, 1, 0, 1}, std::nullopt), StrategyError);
}

TEST_CASE("opening family is certified") {
  for (int i = 3; i <= 5; ++i) {
    const auto r = verify_policy(ReversedZeckendorf{}, thm12_start(i), *thm12_policy(i), true);
    CHECK_MESSAGE(r.ok, r.failure);
  }
}

TEST_CASE("copycat is certified from small even starts") {
  for (const auto& s : even_starts(16)) {
    CHECK(solve(s).winner == Player::kP2);
    const auto r = verify_policy(ReversedZeckendorf{}, s, *copycat_policy(), false);
    CHECK_MESSAGE(r.ok, s.to_string() << ": " << r.failure);
  }
}

TEST_CASE("verifier reports a losing policy with its line") {
  const auto r = verify_policy(ReversedZeckendorf{}, GameState::from_zeckendorf(4), FirstLegal{}, true);
  CHECK_FALSE(r.ok);
  CHECK(r.failure.find("Split(3)") != std::string::npos);
  const auto bad = verify_policy(ReversedZeckendorf{}, GameState{1, 1, 1}, *copycat_policy(), true);
  CHECK_FALSE(bad.ok);
}

TEST_CASE("ternary classification examples") {
  CHECK(classify123(2, 2, 2) == Player::kP2);
  CHECK(classify123(1, 1, 1) == Player::kP1);
  CHECK(classify123(3, 0, 2) == Player::kP2);
  CHECK(classify123(1, 0, 2) == Player::kP1);
  CHECK(classify123(0, 0, 1) == Player::kP2);
  CHECK(classify123(3, 0, 0) == Player::kP2);
  CHECK(parity_class(3, 0, 2).name() == "OEE(a>c)");
  CHECK(parity_class(1, 1, 1).name() == "OOO");
  CHECK_FALSE(parity_class(1, 1, 1).a_greater.has_value());
}

TEST_CASE("strategy123 prescriptions") {
  CHECK(strategy123({1, 1, 1}) == Move::split(3));
  CHECK(apply(GameState{1, 1, 1}, Move::split(3)) == GameState{2, 2});
  CHECK(strategy123({0, 1, 0}) == Move::split(2));
  CHECK(apply(GameState{0, 1}, Move::split(2)) == GameState{2});
  CHECK_THROWS_AS(strategy123({0, 0, 1}), NoWinningMoveError);
  CHECK(strategy123({1, 0, 1}) == Move::combine(2));
  // OOE on both sides of a + 2 > c.
  CHECK(strategy123({1, 1, 0}) == Move::split(2));
  CHECK(strategy123({1, 1, 4}) == Move::split(3));
  // EOO on both sides.
  CHECK(strategy123({0, 1, 1}) == Move::split(3));
  CHECK(strategy123({0, 1, 3}) == Move::split(2));
}

TEST_CASE("ternary closure") {
  for (Value a = 0; a <= 6; ++a) {
    for (Value b = 0; b <= 6; ++b) {
      for (Value c = 0; c <= 6; ++c) {
        if (a + b + c == 0) continue;
        const TernaryState t{a, b, c};
        CHECK(TernaryState::from_game_state(t.to_game_state()) == t);
        for (const auto& m : legal_moves_reversed(t.to_game_state())) {
          CHECK(m.index <= 3);
          if (m.kind == MoveKind::kCombine) CHECK(m.index == 2);
        }
      }
    }
  }
  CHECK_THROWS_AS(TernaryState::from_game_state(GameState{0, 0, 0, 1}), DomainError);
}

TEST_CASE("classifier matches the solver and the strategy lands on lost positions") {
  for (Value c = 0; 3 * c <= 20; ++c) {
    for (Value b = 0; 3 * c + 2 * b <= 20; ++b) {
      for (Value a = 0; a + 2 * b + 3 * c <= 20; ++a) {
        if (a + b + c == 0) continue;
        const TernaryState t{a, b, c};
        const Player w = classify123(t);
        CHECK(solve(t.to_game_state()).winner == w);
        if (w == Player::kP1 && !is_terminal(t.to_game_state())) {
          const GameState next = apply(t.to_game_state(), strategy123(t));
          CHECK(classify123(TernaryState::from_game_state(next)) == Player::kP2);
        }
      }
    }
  }
}

TEST_CASE("strategy123 is certified from (1,1,1)") {
  const auto r = verify_policy(ReversedZeckendorf{}, GameState{1, 1, 1}, *strategy123_policy(), true);
  CHECK_MESSAGE(r.ok, r.failure);
}
