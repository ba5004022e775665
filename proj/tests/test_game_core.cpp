#include <doctest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "rzg/errors.hpp"
#include "rzg/game_core.hpp"
#include "rzg/game_graph.hpp"

using namespace rzg;

namespace {

std::vector<GameState> reachable(Value n) {
  const auto g = GameGraph<ReversedZeckendorf>::build({}, GameState::from_zeckendorf(n));
  std::vector<GameState> out;
  for (NodeId id = 0; id < g.vertex_count(); ++id) out.push_back(g.state(id));
  return out;
}

int zeck_terms(Value n) {
  int z = 0;
  for (auto h : zeckendorf(n)) z += static_cast<int>(h);
  return z;
}

}  // namespace

TEST_CASE("legal reversed moves") {
  CHECK(legal_moves_reversed({0, 0, 1}) == std::vector<Move>{Move::split(3)});
  CHECK(legal_moves_reversed({1, 0, 1}) == std::vector<Move>{Move::split(3), Move::combine(2)});
  CHECK(legal_moves_reversed({5}).empty());
  CHECK(legal_moves_reversed({1, 0, 0, 1}) == std::vector<Move>{Move::split(4), Move::combine(3)});
}

TEST_CASE("apply") {
  CHECK(apply({0, 2}, Move::split(2)) == GameState{2, 1});
  CHECK(apply({1, 0, 0, 1}, Move::combine(3)) == GameState{0, 0, 2});
  CHECK(apply({0, 0, 1}, Move::split(3)) == GameState{1, 1});
  CHECK(apply({1, 0, 1}, Move::combine(2)) == GameState{0, 2});
}

TEST_CASE("illegal moves name the blocking height") {
  try {
    apply({0, 0, 1}, Move::combine(2));
    FAIL("expected IllegalMoveError");
  } catch (const IllegalMoveError& e) {
    CHECK(std::string(e.what()).find("h_1") != std::string::npos);
  }
  CHECK_THROWS_AS(apply({1}, Move::split(2)), IllegalMoveError);
  CHECK_THROWS_AS(apply({1, 1}, Move::split(1)), IllegalMoveError);
}

TEST_CASE("terminal positions") {
  CHECK(is_terminal({7}));
  CHECK_FALSE(is_terminal({0, 1, 0, 1}));
  CHECK_FALSE(is_terminal({2, 1}));
}

TEST_CASE("canonical form and potential") {
  CHECK(canonical({1, 0, 1, 0, 0}) == GameState{1, 0, 1});
  CHECK(canonical({1, 0, 1, 0, 0}).heights() == Heights{1, 0, 1});
  CHECK_THROWS_AS(canonical({0, 0}), DomainError);
  CHECK(potential({1, 0, 1}) == Potential{2, 4, 0});
  CHECK(potential({0, 0, 2}) == Potential{2, 6, 0});
  // Combine(2) keeps chips and the weighted sum; only the bin-2 count moves.
  CHECK(potential({0, 2}) == Potential{2, 4, 2});
}

TEST_CASE("text encoding") {
  CHECK(GameState::parse("0,1,0,1") == GameState::from_zeckendorf(7));
  CHECK(GameState::parse("3,0,0") == GameState{3});
  CHECK(GameState{0, 1, 0, 1}.to_string() == "0,1,0,1");
  CHECK(Move::combine(3).to_string() == "Combine(3)");
  CHECK_THROWS(GameState::parse("1,x"));
  CHECK_THROWS(GameState::parse(""));
  CHECK_THROWS_AS(GameState::parse("0,0"), DomainError);
}

TEST_CASE("forward moves") {
  CHECK(legal_moves_forward({2}) == std::vector<ForwardMove>{{MoveKind::kCombine, 1}});
  CHECK(legal_moves_forward({0, 2}) == std::vector<ForwardMove>{{MoveKind::kSplit, 2}});
  CHECK(legal_moves_forward({0, 0, 0, 1}).empty());
  CHECK(apply_forward({0, 2}, {MoveKind::kSplit, 2}) == GameState{1, 0, 1});
}

TEST_CASE("conservation, monovariant and max-index monotonicity") {
  for (Value n = 1; n <= 30; ++n) {
    for (const auto& s : reachable(n)) {
      for (const auto& m : legal_moves_reversed(s)) {
        const GameState t = apply(s, m);
        CHECK(t.value() == n);
        CHECK(potential(t) > potential(s));
        CHECK(t.max_bin() <= s.max_bin());
        if (m.kind == MoveKind::kSplit) {
          CHECK(potential(t).chips == potential(s).chips + 1);
        } else if (m.index >= 3) {
          CHECK(potential(t).chips == potential(s).chips);
          CHECK(potential(t).weighted == potential(s).weighted + 1);
        } else {
          CHECK(potential(t).chips == potential(s).chips);
          CHECK(potential(t).weighted == potential(s).weighted);
          CHECK(potential(t).twos == potential(s).twos + 2);
        }
      }
    }
  }
}

TEST_CASE("reversed edges are exactly the transposed forward edges") {
  for (Value n = 1; n <= 15; ++n) {
    const auto states = reachable(n);
    const std::set<GameState> inside(states.begin(), states.end());
    for (const auto& a : states) {
      std::set<GameState> rev;
      for (const auto& m : legal_moves_reversed(a)) rev.insert(apply(a, m));
      for (const auto& b : states) {
        std::set<GameState> fwd;
        for (const auto& m : legal_moves_forward(b)) fwd.insert(apply_forward(b, m));
        CHECK(rev.count(b) == fwd.count(a));
      }
      for (const auto& b : rev) CHECK(inside.count(b) == 1);
    }
  }
}

TEST_CASE("every complete game splits exactly n - Z(n) times") {
  for (Value n = 1; n <= 12; ++n) {
    const int expected_splits = static_cast<int>(n) - zeck_terms(n);
    // Depth-first walk over every complete game.
    struct Frame {
      GameState s;
      int splits;
      int combines;
    };
    std::vector<Frame> stack{{GameState::from_zeckendorf(n), 0, 0}};
    while (!stack.empty()) {
      const Frame f = stack.back();
      stack.pop_back();
      const auto moves = legal_moves_reversed(f.s);
      if (moves.empty()) {
        CHECK(f.splits == expected_splits);
        CHECK(is_terminal(f.s));
        CHECK(f.s == GameState{n});
        continue;
      }
      for (const auto& m : moves) {
        const bool split = m.kind == MoveKind::kSplit;
        stack.push_back({apply(f.s, m), f.splits + split, f.combines + !split});
      }
    }
  }
}
