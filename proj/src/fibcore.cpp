#include "rzg/fibcore.hpp"

#include <array>
#include <string>

#include "rzg/errors.hpp"

namespace rzg {
namespace {

constexpr std::array<Value, kMaxFibIndex + 1> make_table() {
  std::array<Value, kMaxFibIndex + 1> t{};
  t[1] = 1;
  t[2] = 2;
  for (int k = 3; k <= kMaxFibIndex; ++k) t[k] = t[k - 1] + t[k - 2];
  return t;
}

constexpr auto kFib = make_table();

}  // namespace

Value fib(int k) {
  if (k < 1 || k > kMaxFibIndex) {
    throw RangeError("fib: index " + std::to_string(k) + " outside [1, 90]");
  }
  return kFib[k];
}

FibIndexedValue largest_fib_leq(Value n) {
  if (n == 0) throw DomainError("largest_fib_leq: n must be positive");
  if (n > kFib[kMaxFibIndex]) {
    throw RangeError("largest_fib_leq: n exceeds F(90)");
  }
  int k = 1;
  while (k < kMaxFibIndex && kFib[k + 1] <= n) ++k;
  return {kFib[k], k};
}

Heights zeckendorf(Value n) {
  if (n == 0) throw DomainError("zeckendorf: n must be positive");
  Heights h;
  while (n > 0) {
    const auto [f, k] = largest_fib_leq(n);
    if (h.empty()) h.assign(static_cast<std::size_t>(k), 0);
    h[static_cast<std::size_t>(k - 1)] = 1;
    n -= f;
  }
  return h;
}

Value value_of(std::span<const Value> heights) {
  Value total = 0;
  for (std::size_t i = 0; i < heights.size(); ++i) {
    if (heights[i] == 0) continue;
    const int k = static_cast<int>(i) + 1;
    Value term = 0;
    if (k > kMaxFibIndex || __builtin_mul_overflow(heights[i], kFib[k], &term) ||
        __builtin_add_overflow(total, term, &total)) {
      throw OverflowError("value_of: total exceeds 64 bits");
    }
  }
  return total;
}

DecompositionStats decomposition_stats(Value n) {
  DecompositionStats s{n, zeckendorf(n), 0, 0};
  for (std::size_t i = 0; i < s.heights.size(); ++i) {
    if (s.heights[i] != 0) {
      ++s.terms;
      s.index_sum += static_cast<int>(i) + 1;
    }
  }
  return s;
}

bool is_zeckendorf_form(std::span<const Value> heights) {
  for (std::size_t i = 0; i < heights.size(); ++i) {
    if (heights[i] > 1) return false;
    if (i > 0 && heights[i] == 1 && heights[i - 1] == 1) return false;
  }
  return true;
}

}  // namespace rzg
