#pragma once

// Random reversed Zeckendorf games under two measures:
//  * move-uniform: each turn the mover picks uniformly among legal moves;
//  * game-uniform: every complete game from the start is equally likely.

#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "rzg/game_core.hpp"

namespace rzg {

using Rational = boost::multiprecision::cpp_rational;
using Count = unsigned __int128;

enum class RandomGameModel { kMoveUniform, kGameUniform };

const char* model_name(RandomGameModel m);

// Name of the generator recorded with every simulation: trial t runs on an
// mt19937_64 seeded with the t-th SplitMix64 output of the user seed, and
// bounded draws use rejection sampling.
inline constexpr const char* kGeneratorName = "mt19937_64+splitmix64";

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial);

// Uniform integer in [0, bound) without modulo bias; bound >= 1.
template <class Engine>
std::uint64_t uniform_below(Engine& eng, std::uint64_t bound) {
  const std::uint64_t threshold = (0 - bound) % bound;
  while (true) {
    const std::uint64_t u = eng();
    if (u >= threshold) return u % bound;
  }
}

struct Interval {
  double lower;
  double upper;
};

struct LengthHistogram {
  int modulus = 2;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::vector<std::uint64_t> counts;  // counts[z]: games with length = z (mod modulus)

  std::vector<double> probabilities() const;
  // Exact (Clopper-Pearson) two-sided intervals for each residue.
  std::vector<Interval> confidence_intervals(double confidence = 0.95) const;
};

// Length of one move-uniform playout driven by `seed`.
int random_game_length(const GameState& start, std::uint64_t seed);

// `trials` independent move-uniform playouts. The result depends only on
// (start, trials, seed, modulus), never on `threads`.
LengthHistogram simulate(const GameState& start, std::uint64_t trials, std::uint64_t seed, int modulus,
                         unsigned threads = 1);

// Exact move-uniform probability that the game length is odd.
Rational exact_parity_prob(const GameState& start);

// Exact move-uniform distribution of game length modulo `modulus`.
std::vector<Rational> exact_length_distribution(const GameState& start, int modulus);

struct GameCounts {
  Count total = 0;
  std::vector<Count> by_residue;  // complete games per length residue

  std::vector<Rational> probabilities() const;
};

// Exact number of complete games by length residue. Throws OverflowError if a
// count leaves 128 bits.
GameCounts enumerate_games(const GameState& start, int modulus);

std::string to_string(Count c);

struct EquidistributionRow {
  Value n;
  int modulus;
  RandomGameModel model;
  std::vector<double> probabilities;
  double max_deviation;  // max over residues of |p - 1/modulus|
};

// Exact residue distributions of zeckendorf(n) under both measures.
std::vector<EquidistributionRow> equidistribution_report(const std::vector<Value>& ns,
                                                         const std::vector<int>& moduli);

}  // namespace rzg
