#pragma once

// Reachable position graph of a finite, acyclic, normal-play impartial game,
// plus the retrograde Win/Loss labelling and path-length DPs over it.

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "rzg/errors.hpp"

namespace rzg {

using NodeId = std::uint32_t;

enum class Label : std::uint8_t { kWin, kLoss };

enum class Player : int { kP1 = 1, kP2 = 2 };

inline Player other(Player p) { return p == Player::kP1 ? Player::kP2 : Player::kP1; }

inline const char* player_name(Player p) { return p == Player::kP1 ? "P1" : "P2"; }

template <class G>
concept ImpartialGame = requires(const G& g, const typename G::State& s, const typename G::Move& m) {
  { g.moves(s) } -> std::same_as<std::vector<typename G::Move>>;
  { g.apply(s, m) } -> std::same_as<typename G::State>;
  { std::hash<typename G::State>{}(s) } -> std::convertible_to<std::size_t>;
  { s == s } -> std::convertible_to<bool>;
};

template <ImpartialGame G>
class GameGraph {
 public:
  using State = typename G::State;
  using Move = typename G::Move;

  // Breadth-first discovery from `start`; node 0 is the start. A nonzero
  // `max_nodes` bounds the search and raises ResourceLimitError when hit.
  static GameGraph build(const G& game, const State& start, std::size_t max_nodes = 0) {
    GameGraph g;
    g.intern(start);
    for (NodeId id = 0; id < g.nodes_.size(); ++id) {
      g.offsets_.push_back(static_cast<std::uint64_t>(g.targets_.size()));
      const State here = *g.nodes_[id];
      for (const Move& m : game.moves(here)) {
        const NodeId to = g.intern(game.apply(here, m));
        const auto first = g.targets_.begin() + static_cast<std::ptrdiff_t>(g.offsets_.back());
        if (std::find(first, g.targets_.end(), to) != g.targets_.end()) continue;
        g.targets_.push_back(to);
        g.moves_.push_back(m);
      }
      if (max_nodes != 0 && g.nodes_.size() > max_nodes) {
        throw ResourceLimitError("position graph exceeds " + std::to_string(max_nodes) +
                                 " nodes (" + std::to_string(id) + " expanded)");
      }
    }
    g.offsets_.push_back(static_cast<std::uint64_t>(g.targets_.size()));
    g.compute_post_order();
    return g;
  }

  std::size_t vertex_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return targets_.size(); }

  static constexpr NodeId start() { return 0; }
  const State& state(NodeId id) const { return *nodes_[id]; }

  std::optional<NodeId> find(const State& s) const {
    const auto it = index_.find(s);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  std::span<const NodeId> successors(NodeId id) const {
    return {targets_.data() + offsets_[id], targets_.data() + offsets_[id + 1]};
  }
  std::span<const Move> moves(NodeId id) const {
    return {moves_.data() + offsets_[id], moves_.data() + offsets_[id + 1]};
  }
  bool is_terminal(NodeId id) const { return offsets_[id] == offsets_[id + 1]; }

  // Every node appears after all of its successors.
  const std::vector<NodeId>& post_order() const { return post_order_; }

 private:
  NodeId intern(const State& s) {
    const auto [it, inserted] = index_.try_emplace(s, static_cast<NodeId>(nodes_.size()));
    if (inserted) nodes_.push_back(&it->first);
    return it->second;
  }

  void compute_post_order() {
    enum : std::uint8_t { kNew, kOpen, kDone };
    std::vector<std::uint8_t> mark(nodes_.size(), kNew);
    std::vector<std::pair<NodeId, std::uint64_t>> stack;
    post_order_.reserve(nodes_.size());
    stack.emplace_back(start(), offsets_[start()]);
    mark[start()] = kOpen;
    while (!stack.empty()) {
      auto& [id, next] = stack.back();
      if (next == offsets_[id + 1]) {
        mark[id] = kDone;
        post_order_.push_back(id);
        stack.pop_back();
        continue;
      }
      const NodeId to = targets_[next++];
      if (mark[to] == kOpen) throw std::logic_error("position graph has a cycle");
      if (mark[to] == kNew) {
        mark[to] = kOpen;
        stack.emplace_back(to, offsets_[to]);
      }
    }
  }

  std::unordered_map<State, NodeId> index_;
  std::vector<const State*> nodes_;
  std::vector<std::uint64_t> offsets_;
  std::vector<NodeId> targets_;
  std::vector<Move> moves_;
  std::vector<NodeId> post_order_;
};

// Normal play: a terminal node is a loss for the player to move; a node is a
// win iff some successor is a loss.
template <class Graph>
std::vector<Label> label_positions(const Graph& g) {
  std::vector<Label> label(g.vertex_count(), Label::kLoss);
  for (const NodeId id : g.post_order()) {
    for (const NodeId to : g.successors(id)) {
      if (label[to] == Label::kLoss) {
        label[id] = Label::kWin;
        break;
      }
    }
  }
  return label;
}

// Number of moves from each node to a terminal along the shortest (or longest) path.
template <class Graph>
std::vector<int> moves_to_end(const Graph& g, bool longest) {
  std::vector<int> dist(g.vertex_count(), 0);
  for (const NodeId id : g.post_order()) {
    if (g.is_terminal(id)) continue;
    int best = longest ? std::numeric_limits<int>::min() : std::numeric_limits<int>::max();
    for (const NodeId to : g.successors(id)) {
      best = longest ? std::max(best, dist[to] + 1) : std::min(best, dist[to] + 1);
    }
    dist[id] = best;
  }
  return dist;
}

}  // namespace rzg
