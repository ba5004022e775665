#include "rzg/randomplay.hpp"

#include <cmath>
#include <random>
#include <thread>

#include <boost/math/distributions/binomial.hpp>

#include "rzg/errors.hpp"
#include "rzg/solver.hpp"

namespace rzg {
namespace {

void check_modulus(int modulus) {
  if (modulus < 1) throw DomainError("modulus must be at least 1");
}

std::size_t residue_after_move(std::size_t z, int modulus) {
  return (z + 1) % static_cast<std::size_t>(modulus);
}

}  // namespace

const char* model_name(RandomGameModel m) {
  return m == RandomGameModel::kMoveUniform ? "move_uniform" : "game_uniform";
}

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) {
  std::uint64_t z = seed + (trial + 1) * 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::vector<double> LengthHistogram::probabilities() const {
  std::vector<double> p;
  for (const auto c : counts) p.push_back(trials ? static_cast<double>(c) / static_cast<double>(trials) : 0.0);
  return p;
}

std::vector<Interval> LengthHistogram::confidence_intervals(double confidence) const {
  using boost::math::binomial_distribution;
  const double alpha = (1.0 - confidence) / 2.0;
  std::vector<Interval> out;
  for (const auto c : counts) {
    const double k = static_cast<double>(c);
    const double t = static_cast<double>(trials);
    out.push_back({binomial_distribution<>::find_lower_bound_on_p(t, k, alpha),
                   binomial_distribution<>::find_upper_bound_on_p(t, k, alpha)});
  }
  return out;
}

int random_game_length(const GameState& start, std::uint64_t seed) {
  std::mt19937_64 eng(seed);
  GameState s = start;
  int length = 0;
  while (true) {
    const auto moves = legal_moves_reversed(s);
    if (moves.empty()) return length;
    s = apply(s, moves[uniform_below(eng, moves.size())]);
    ++length;
  }
}

LengthHistogram simulate(const GameState& start, std::uint64_t trials, std::uint64_t seed, int modulus,
                         unsigned threads) {
  check_modulus(modulus);
  if (trials == 0) throw DomainError("simulate needs at least one trial");
  const unsigned n_threads = std::max(1u, threads);
  std::vector<std::vector<std::uint64_t>> partial(n_threads, std::vector<std::uint64_t>(static_cast<std::size_t>(modulus), 0));
  const auto run = [&](unsigned worker) {
    for (std::uint64_t t = worker; t < trials; t += n_threads) {
      const int len = random_game_length(start, trial_seed(seed, t));
      ++partial[worker][static_cast<std::size_t>(len % modulus)];
    }
  };
  if (n_threads == 1) {
    run(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < n_threads; ++w) pool.emplace_back(run, w);
  }
  LengthHistogram h{modulus, trials, seed, std::vector<std::uint64_t>(static_cast<std::size_t>(modulus), 0)};
  for (const auto& p : partial) {
    for (std::size_t z = 0; z < p.size(); ++z) h.counts[z] += p[z];
  }
  return h;
}

std::vector<Rational> exact_length_distribution(const GameState& start, int modulus) {
  check_modulus(modulus);
  const auto g = ZeckGraph::build(ReversedZeckendorf{}, start);
  const auto z_count = static_cast<std::size_t>(modulus);
  std::vector<std::vector<Rational>> dist(g.vertex_count());
  for (const NodeId id : g.post_order()) {
    auto& d = dist[id];
    d.assign(z_count, Rational(0));
    const auto succ = g.successors(id);
    if (succ.empty()) {
      d[0] = 1;
      continue;
    }
    for (const NodeId to : succ) {
      for (std::size_t z = 0; z < z_count; ++z) d[residue_after_move(z, modulus)] += dist[to][z];
    }
    for (auto& p : d) p /= static_cast<long long>(succ.size());
  }
  return dist[ZeckGraph::start()];
}

Rational exact_parity_prob(const GameState& start) { return exact_length_distribution(start, 2)[1]; }

std::vector<Rational> GameCounts::probabilities() const {
  std::vector<Rational> p;
  for (const Count c : by_residue) {
    p.emplace_back(Rational(boost::multiprecision::cpp_int(c)) / boost::multiprecision::cpp_int(total));
  }
  return p;
}

GameCounts enumerate_games(const GameState& start, int modulus) {
  check_modulus(modulus);
  const auto g = ZeckGraph::build(ReversedZeckendorf{}, start);
  const auto z_count = static_cast<std::size_t>(modulus);
  std::vector<std::vector<Count>> paths(g.vertex_count());
  for (const NodeId id : g.post_order()) {
    auto& here = paths[id];
    here.assign(z_count, 0);
    if (g.is_terminal(id)) {
      here[0] = 1;
      continue;
    }
    for (const NodeId to : g.successors(id)) {
      for (std::size_t z = 0; z < z_count; ++z) {
        Count& slot = here[residue_after_move(z, modulus)];
        if (__builtin_add_overflow(slot, paths[to][z], &slot)) {
          throw OverflowError("game count exceeds 128 bits");
        }
      }
    }
  }
  GameCounts out{0, paths[ZeckGraph::start()]};
  for (const Count c : out.by_residue) {
    if (__builtin_add_overflow(out.total, c, &out.total)) throw OverflowError("game count exceeds 128 bits");
  }
  return out;
}

std::string to_string(Count c) {
  if (c == 0) return "0";
  std::string s;
  while (c > 0) {
    s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(c % 10)));
    c /= 10;
  }
  return s;
}

std::vector<EquidistributionRow> equidistribution_report(const std::vector<Value>& ns,
                                                         const std::vector<int>& moduli) {
  std::vector<EquidistributionRow> rows;
  const auto finish = [](EquidistributionRow row) {
    row.max_deviation = 0;
    for (const double p : row.probabilities) {
      row.max_deviation = std::max(row.max_deviation, std::fabs(p - 1.0 / row.modulus));
    }
    return row;
  };
  for (const int z : moduli) {
    for (const Value n : ns) {
      const GameState start = GameState::from_zeckendorf(n);
      EquidistributionRow move_row{n, z, RandomGameModel::kMoveUniform, {}, 0};
      for (const auto& p : exact_length_distribution(start, z)) move_row.probabilities.push_back(p.convert_to<double>());
      rows.push_back(finish(std::move(move_row)));
      EquidistributionRow game_row{n, z, RandomGameModel::kGameUniform, {}, 0};
      for (const auto& p : enumerate_games(start, z).probabilities()) game_row.probabilities.push_back(p.convert_to<double>());
      rows.push_back(finish(std::move(game_row)));
    }
  }
  return rows;
}

}  // namespace rzg
