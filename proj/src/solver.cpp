#include "rzg/solver.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>

#include <boost/multiprecision/cpp_dec_float.hpp>

#include "rzg/errors.hpp"

namespace rzg {

Label SolveResult::label(const GameState& state) const {
  const auto id = graph->find(state);
  if (!id) throw LookupError("position " + state.to_string() + " is not in the solved graph");
  return labels[*id];
}

SolveResult solve(const GameState& start, const SolveOptions& options) {
  auto graph = std::make_shared<const ZeckGraph>(
      ZeckGraph::build(ReversedZeckendorf{}, start, options.max_nodes));
  SolveResult r;
  r.n = start.value();
  r.start = start;
  r.labels = label_positions(*graph);
  r.winner = r.labels[ZeckGraph::start()] == Label::kWin ? Player::kP1 : Player::kP2;
  r.edge_count = graph->edge_count();
  r.vertex_count = graph->vertex_count();
  r.graph = std::move(graph);
  return r;
}

std::vector<Move> optimal_moves(const GameState& state, const SolveResult& result) {
  const auto id = result.graph->find(state);
  if (!id) throw LookupError("position " + state.to_string() + " is not in the solved graph");
  std::vector<Move> out;
  const auto succ = result.graph->successors(*id);
  const auto moves = result.graph->moves(*id);
  for (std::size_t k = 0; k < succ.size(); ++k) {
    if (result.labels[succ[k]] == Label::kLoss) out.push_back(moves[k]);
  }
  return out;
}

int shortest_game(const GameState& start) {
  const auto g = ZeckGraph::build(ReversedZeckendorf{}, start);
  return moves_to_end(g, false)[ZeckGraph::start()];
}

int longest_game(const GameState& start) {
  const auto g = ZeckGraph::build(ReversedZeckendorf{}, start);
  return moves_to_end(g, true)[ZeckGraph::start()];
}

std::int64_t length_upper_bound(Value n) {
  const DecompositionStats s = decomposition_stats(n);
  const auto evaluate = [&](auto phi) {
    using R = decltype(phi);
    return phi * phi * R(n) - R(s.index_sum) - R(2 * s.terms) + phi - R(1);
  };
  const long double quick = evaluate((1.0L + std::sqrt(5.0L)) / 2.0L);
  const long double nearest = std::round(quick);
  if (std::fabs(quick - nearest) > 1e-9L) return static_cast<std::int64_t>(std::floor(quick));
  using Wide = boost::multiprecision::cpp_dec_float_100;
  const Wide precise = evaluate(Wide((1 + boost::multiprecision::sqrt(Wide(5))) / 2));
  return static_cast<std::int64_t>(boost::multiprecision::floor(precise));
}

std::vector<TableRow> winner_table(Value lo, Value hi, unsigned threads,
                                   const std::function<void(const TableRow&)>& on_row) {
  if (lo < 2 || hi < lo) throw DomainError("winner_table: need 2 <= lo <= hi");
  const std::size_t count = static_cast<std::size_t>(hi - lo + 1);
  std::vector<std::optional<TableRow>> rows(count);
  std::mutex mu;
  std::size_t emitted = 0;
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;

  const auto worker = [&] {
    for (std::size_t k = next++; k < count; k = next++) {
      TableRow row{};
      try {
        const SolveResult r = solve(lo + k);
        row = {lo + k, r.winner, r.edge_count, r.vertex_count};
      } catch (...) {
        std::lock_guard lock(mu);
        if (!failure) failure = std::current_exception();
        next = count;
        return;
      }
      std::lock_guard lock(mu);
      rows[k] = row;
      while (emitted < count && rows[emitted]) {
        if (on_row) on_row(*rows[emitted]);
        ++emitted;
      }
    }
  };

  const unsigned n_threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<TableRow> out;
  out.reserve(count);
  for (auto& r : rows) out.push_back(*r);
  return out;
}

WinFraction win_fraction(const std::vector<TableRow>& rows) {
  WinFraction f{0, rows.size()};
  for (const auto& r : rows) f.p1_wins += r.winner == Player::kP1;
  return f;
}

WinFraction win_fraction(Value lo, Value hi, unsigned threads) {
  return win_fraction(winner_table(lo, hi, threads));
}

}  // namespace rzg
