#include "rzg/game_core.hpp"

#include <charconv>
#include <stdexcept>

#include "rzg/errors.hpp"

namespace rzg {
namespace {

std::string kind_name(MoveKind k) { return k == MoveKind::kSplit ? "Split" : "Combine"; }

std::size_t slot(int bin) { return static_cast<std::size_t>(bin) - 1; }

void grow_to(Heights& h, int bin) {
  if (h.size() < slot(bin) + 1) h.resize(slot(bin) + 1, 0);
}

[[noreturn]] void blocked(const GameState& s, std::string_view move, int bin) {
  throw IllegalMoveError(std::string(move) + " is illegal at " + s.to_string() + ": h_" +
                         std::to_string(bin) + " = " + std::to_string(s.height(bin)));
}

}  // namespace

GameState::GameState(Heights heights) : heights_(std::move(heights)) {
  while (!heights_.empty() && heights_.back() == 0) heights_.pop_back();
  if (heights_.empty()) throw DomainError("game state must hold at least one chip");
}

GameState GameState::parse(std::string_view text) {
  Heights h;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = text.find(',', pos);
    const std::string_view field =
        text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    Value v = 0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size()) {
      throw std::invalid_argument("bad height field '" + std::string(field) + "'");
    }
    h.push_back(v);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return GameState(std::move(h));
}

std::string GameState::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < heights_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(heights_[i]);
  }
  return out;
}

GameState canonical(Heights heights) { return GameState(std::move(heights)); }

std::string Move::to_string() const { return kind_name(kind) + "(" + std::to_string(index) + ")"; }

std::string ForwardMove::to_string() const {
  return "Forward" + kind_name(kind) + "(" + std::to_string(index) + ")";
}

bool is_legal(const GameState& s, const Move& m) {
  if (m.index < 2) return false;
  if (m.kind == MoveKind::kSplit) return s.height(m.index) >= 1;
  const int low = m.index == 2 ? 1 : m.index - 2;
  return s.height(m.index + 1) >= 1 && s.height(low) >= 1;
}

std::vector<Move> legal_moves_reversed(const GameState& s) {
  std::vector<Move> out;
  const int top = s.max_bin();
  for (int j = 2; j <= top; ++j) {
    if (s.height(j) >= 1) out.push_back(Move::split(j));
  }
  for (int i = 2; i + 1 <= top; ++i) {
    const int low = i == 2 ? 1 : i - 2;
    if (s.height(i + 1) >= 1 && s.height(low) >= 1) out.push_back(Move::combine(i));
  }
  return out;
}

GameState apply(const GameState& s, const Move& m) {
  if (m.index < 2) throw IllegalMoveError(m.to_string() + ": bin index must be at least 2");
  Heights h = s.heights();
  grow_to(h, m.index + 1);
  if (m.kind == MoveKind::kSplit) {
    const int j = m.index;
    if (h[slot(j)] == 0) blocked(s, m.to_string(), j);
    h[slot(j)] -= 1;
    if (j == 2) {
      h[slot(1)] += 2;
    } else {
      h[slot(j - 1)] += 1;
      h[slot(j - 2)] += 1;
    }
  } else {
    const int i = m.index;
    const int low = i == 2 ? 1 : i - 2;
    if (h[slot(i + 1)] == 0) blocked(s, m.to_string(), i + 1);
    if (h[slot(low)] == 0) blocked(s, m.to_string(), low);
    h[slot(i + 1)] -= 1;
    h[slot(low)] -= 1;
    h[slot(i)] += 2;
  }
  return GameState(std::move(h));
}

bool is_terminal(const GameState& s) { return s.max_bin() <= 1; }

Potential potential(const GameState& s) {
  Potential p{0, 0, s.height(2)};
  for (int i = 1; i <= s.max_bin(); ++i) {
    p.chips += s.height(i);
    p.weighted += static_cast<Value>(i) * s.height(i);
  }
  return p;
}

std::vector<ForwardMove> legal_moves_forward(const GameState& s) {
  std::vector<ForwardMove> out;
  const int top = s.max_bin();
  if (s.height(1) >= 2) out.push_back({MoveKind::kCombine, 1});
  for (int i = 2; i <= top; ++i) {
    if (s.height(i) >= 1 && s.height(i - 1) >= 1) out.push_back({MoveKind::kCombine, i});
  }
  for (int i = 2; i <= top; ++i) {
    if (s.height(i) >= 2) out.push_back({MoveKind::kSplit, i});
  }
  return out;
}

GameState apply_forward(const GameState& s, const ForwardMove& m) {
  Heights h = s.heights();
  grow_to(h, m.index + 1);
  const int i = m.index;
  const auto need = [&](int bin, Value count) {
    if (bin < 1 || h[slot(bin)] < count) blocked(s, m.to_string(), bin);
  };
  if (m.kind == MoveKind::kCombine) {
    if (i == 1) {
      need(1, 2);
      h[slot(1)] -= 2;
      h[slot(2)] += 1;
    } else {
      need(i, 1);
      need(i - 1, 1);
      h[slot(i)] -= 1;
      h[slot(i - 1)] -= 1;
      h[slot(i + 1)] += 1;
    }
  } else {
    if (i < 2) throw IllegalMoveError(m.to_string() + ": bin index must be at least 2");
    need(i, 2);
    h[slot(i)] -= 2;
    h[slot(i + 1)] += 1;
    h[slot(i == 2 ? 1 : i - 2)] += 1;
  }
  return GameState(std::move(h));
}

}  // namespace rzg
