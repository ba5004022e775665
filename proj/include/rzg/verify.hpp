#pragma once

// Exhaustive certification of a constructive strategy: the policy's side is
// played against every possible sequence of opponent replies.

#include <algorithm>
#include <exception>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "rzg/game_graph.hpp"
#include "rzg/policy.hpp"

namespace rzg {

struct VerifyResult {
  bool ok = true;
  std::string failure;        // empty when ok
  std::size_t policy_turns = 0;

  explicit operator bool() const { return ok; }
};

namespace detail {

template <ImpartialGame G>
class PolicyVerifier {
 public:
  using State = typename G::State;
  using Move = typename G::Move;

  explicit PolicyVerifier(const G& game) : game_(game) {}

  VerifyResult run(const State& start, const Policy<G>& policy, bool mover_is_p1) {
    auto p = policy.clone();
    if (mover_is_p1) {
      policy_turn(start, std::nullopt, std::move(p));
    } else {
      adversary_turn(start, *p);
    }
    return std::move(result_);
  }

 private:
  bool fail(std::string why) {
    result_.ok = false;
    std::string line;
    for (const auto& m : line_) line += (line.empty() ? "" : " ") + m.to_string();
    result_.failure = why + " [line: " + (line.empty() ? "<start>" : line) + "]";
    return false;
  }

  bool policy_turn(const State& s, const std::optional<Move>& last, std::unique_ptr<Policy<G>> p) {
    const auto moves = game_.moves(s);
    if (moves.empty()) return fail("policy side has no move at " + s.to_string());

    auto& seen = certified_[s];
    const auto key = std::make_pair(last, p->memo_key());
    if (std::find(seen.begin(), seen.end(), key) != seen.end()) return true;

    ++result_.policy_turns;
    std::optional<Move> m;
    try {
      m = p->choose(s, last);
    } catch (const std::exception& e) {
      return fail(std::string("policy raised: ") + e.what() + " at " + s.to_string());
    }
    if (std::find(moves.begin(), moves.end(), *m) == moves.end()) {
      return fail("policy chose illegal " + m->to_string() + " at " + s.to_string());
    }
    line_.push_back(*m);
    const bool ok = adversary_turn(game_.apply(s, *m), *p);
    line_.pop_back();
    if (ok) certified_[s].push_back(key);
    return ok;
  }

  bool adversary_turn(const State& s, const Policy<G>& p) {
    for (const Move& m : game_.moves(s)) {
      line_.push_back(m);
      const bool ok = policy_turn(game_.apply(s, m), m, p.clone());
      line_.pop_back();
      if (!ok) return false;
    }
    return true;
  }

  const G& game_;
  VerifyResult result_;
  std::vector<Move> line_;
  std::unordered_map<State, std::vector<std::pair<std::optional<Move>, std::uint64_t>>> certified_;
};

}  // namespace detail

// True iff the policy's side makes the last move against every opponent line.
// The policy moves first when `mover_is_p1`, otherwise the opponent does.
template <ImpartialGame G>
VerifyResult verify_policy(const G& game, const typename G::State& start, const Policy<G>& policy,
                           bool mover_is_p1) {
  return detail::PolicyVerifier<G>(game).run(start, policy, mover_is_p1);
}

}  // namespace rzg
