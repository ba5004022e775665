#include "rzg/chomp.hpp"

#include <algorithm>

#include "rzg/errors.hpp"

namespace rzg {
namespace {

std::vector<int> transpose(int rows, int cols, const std::vector<int>& heights) {
  std::vector<int> t(static_cast<std::size_t>(rows), 0);
  for (int y = 0; y < rows; ++y) {
    for (int x = 0; x < cols; ++x) {
      if (heights[static_cast<std::size_t>(x)] > y) ++t[static_cast<std::size_t>(y)];
    }
  }
  return t;
}

void supersets(const ChompBoard& s, std::size_t col, int cap, std::vector<int>& cur,
               std::vector<ChompBoard>& out) {
  if (col == cur.size()) {
    if (cur != s.heights()) out.emplace_back(s.rows(), s.cols(), cur);
    return;
  }
  for (int h = s.heights()[col]; h <= cap; ++h) {
    cur[col] = h;
    supersets(s, col + 1, h, cur, out);
  }
  cur[col] = s.heights()[col];
}

}  // namespace

ChompBoard::ChompBoard(int rows, int cols, std::vector<int> heights)
    : rows_(rows), cols_(cols), heights_(std::move(heights)) {
  if (rows < 1 || cols < 1) throw DomainError("chomp board needs at least one row and column");
  if (heights_.size() != static_cast<std::size_t>(cols)) {
    throw DomainError("chomp board needs one height per column");
  }
  for (int x = 0; x < cols; ++x) {
    const int h = heights_[static_cast<std::size_t>(x)];
    if (h < 0 || h > rows || (x > 0 && h > heights_[static_cast<std::size_t>(x) - 1])) {
      throw DomainError("chomp heights must be nonincreasing within [0, rows]");
    }
  }
  if (heights_[0] < 1) throw DomainError("the poisoned square is always filled");
  if (rows_ < cols_) {
    heights_ = transpose(rows_, cols_, heights_);
    std::swap(rows_, cols_);
  }
}

ChompBoard ChompBoard::initial(int rows, int cols) {
  std::vector<int> h(static_cast<std::size_t>(std::max(cols, 1)), 0);
  h[0] = 1;
  return ChompBoard(rows, cols, std::move(h));
}

ChompBoard ChompBoard::full(int rows, int cols) {
  return ChompBoard(rows, cols, std::vector<int>(static_cast<std::size_t>(std::max(cols, 1)), rows));
}

bool ChompBoard::is_full() const {
  return std::all_of(heights_.begin(), heights_.end(), [&](int h) { return h == rows_; });
}

int ChompBoard::filled() const {
  int total = 0;
  for (const int h : heights_) total += h;
  return total;
}

std::string ChompBoard::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < heights_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(heights_[i]);
  }
  return out;
}

bool is_chomp_move(const ChompBoard& before, const ChompBoard& after) {
  if (before.rows() != after.rows() || before.cols() != after.cols()) return false;
  const int m = before.cols();
  int gx = -1;
  for (int x = 0; x < m; ++x) {
    if (after.height(x) < before.height(x)) return false;
    if (gx < 0 && after.height(x) > before.height(x)) gx = x;
  }
  if (gx < 0) return false;
  // The bite's corner is the lowest missing square of the leftmost changed column.
  const int gy = before.height(gx);
  for (int x = gx; x < m; ++x) {
    const bool reaches = after.height(x) > gy;
    if (reaches ? before.height(x) != gy : before.height(x) != after.height(x)) return false;
  }
  return true;
}

std::vector<ChompMove> chomp_moves(const ChompBoard& state) {
  std::vector<ChompBoard> candidates;
  std::vector<int> cur = state.heights();
  supersets(state, 0, state.rows(), cur, candidates);
  std::vector<ChompMove> out;
  for (auto& c : candidates) {
    if (is_chomp_move(state, c)) out.push_back(std::move(c));
  }
  return out;
}

ChompBoard ChompGame::apply(const ChompBoard& s, const ChompMove& m) const {
  if (!is_chomp_move(s, m)) {
    throw IllegalMoveError("no single bite turns " + m.to_string() + " into " + s.to_string());
  }
  return m;
}

Player chomp_solve(int rows, int cols) {
  if (rows < cols) std::swap(rows, cols);
  if (cols < 1 || rows > kChompMaxSide) throw RangeError("chomp_solve supports sides in [1, 7]");
  if (rows == 1) throw DomainError("the 1x1 board is a trivial game");
  const auto g = GameGraph<ChompGame>::build(ChompGame{}, ChompBoard::initial(rows, cols));
  return label_positions(g)[g.start()] == Label::kWin ? Player::kP1 : Player::kP2;
}

ChompMove chomp_strategy(const ChompBoard& position, const std::optional<ChompMove>& last_opponent_move) {
  const int n = position.rows();
  const int m = position.cols();
  if (m == 1) {
    if (last_opponent_move || position != ChompBoard::initial(n, m)) {
      throw StrategyError("one-column strategy only opens from the initial board");
    }
    return ChompBoard::full(n, m);
  }
  if (!last_opponent_move) throw StrategyError("second-player strategy needs the opponent's move");
  const ChompBoard& after = *last_opponent_move;
  if (!is_chomp_move(position, after)) {
    throw StrategyError(after.to_string() + " is not a move from " + position.to_string());
  }

  // Region: full columns [0, x0), full rows [0, y0), corner (x0, y0) filled.
  int x0 = 0;
  while (x0 < m && position.height(x0) == n) ++x0;
  const int y0 = x0 < m ? position.height(x0) - 1 : n;
  bool shaped = m - x0 >= 2 && n - y0 >= 2;
  for (int x = x0 + 1; shaped && x < m; ++x) shaped = position.height(x) == y0;
  if (!shaped) throw StrategyError("position " + position.to_string() + " is off-strategy");

  std::vector<int> reply = after.heights();
  if (after.height(x0 + 1) > y0) {
    // Bottom row of the region extended to length l.
    int l = 0;
    while (x0 + l < m && after.height(x0 + l) == y0 + 1) ++l;
    if (l == m - x0) return ChompBoard::full(n, m);
    for (int x = x0; x < x0 + l - 1; ++x) reply[static_cast<std::size_t>(x)] = n;
  } else {
    // Left column of the region raised to y0 + h.
    const int top = after.height(x0);
    if (top == n) return ChompBoard::full(n, m);
    for (int x = x0 + 1; x < m; ++x) reply[static_cast<std::size_t>(x)] = top - 1;
  }
  return ChompBoard(n, m, std::move(reply));
}

namespace {

class ChompStrategyPolicy final : public Policy<ChompGame> {
 public:
  explicit ChompStrategyPolicy(ChompBoard start) : position_(std::move(start)) {}

  ChompMove choose(const ChompBoard&, const std::optional<ChompMove>& last) override {
    position_ = chomp_strategy(position_, last);
    return position_;
  }
  std::unique_ptr<Policy<ChompGame>> clone() const override {
    return std::make_unique<ChompStrategyPolicy>(*this);
  }
  std::uint64_t memo_key() const override {
    std::uint64_t key = 0;
    for (const int h : position_.heights()) key = key * static_cast<std::uint64_t>(position_.rows() + 1) + static_cast<std::uint64_t>(h);
    return key;
  }

 private:
  ChompBoard position_;
};

}  // namespace

std::unique_ptr<Policy<ChompGame>> chomp_policy(int rows, int cols) {
  return std::make_unique<ChompStrategyPolicy>(ChompBoard::initial(rows, cols));
}

}  // namespace rzg
