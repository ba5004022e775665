#pragma once

// Fibonacci numbers indexed so that F(1) = 1, F(2) = 2, F(k+1) = F(k) + F(k-1),
// and the Zeckendorf decomposition built on them.

#include <cstdint>
#include <span>
#include <vector>

namespace rzg {

using Value = std::uint64_t;

// Height vectors are stored 0-based in memory: element [i - 1] is the height
// of bin i (the bin holding copies of F(i)).
using Heights = std::vector<Value>;

inline constexpr int kMaxFibIndex = 90;

// F(k) for 1 <= k <= 90. Throws RangeError otherwise.
Value fib(int k);

struct FibIndexedValue {
  Value value;
  int index;

  friend bool operator==(const FibIndexedValue&, const FibIndexedValue&) = default;
};

// Largest F(k) <= n. Throws DomainError for n == 0 and RangeError for n > F(90).
FibIndexedValue largest_fib_leq(Value n);

// Greedy decomposition; the result has entries in {0, 1}, no two adjacent
// ones and no trailing zeros.
Heights zeckendorf(Value n);

// Sum of heights[i - 1] * F(i). Throws OverflowError if the sum leaves 64 bits.
Value value_of(std::span<const Value> heights);

struct DecompositionStats {
  Value n;
  Heights heights;
  int terms;        // Z(n)
  int index_sum;    // Z_I(n)
};

DecompositionStats decomposition_stats(Value n);

bool is_zeckendorf_form(std::span<const Value> heights);

}  // namespace rzg
