#include <doctest.h>

#include <vector>

#include "rzg/errors.hpp"
#include "rzg/fibcore.hpp"

using namespace rzg;

TEST_CASE("fib uses the 1, 2, 3, 5 indexing") {
  CHECK(fib(1) == 1);
  CHECK(fib(2) == 2);
  CHECK(fib(6) == 13);
  CHECK(fib(90) == 4660046610375530309ULL);
  CHECK_THROWS_AS(fib(0), RangeError);
  CHECK_THROWS_AS(fib(91), RangeError);
}

TEST_CASE("fib recurrence holds across the whole range") {
  for (int k = 3; k <= kMaxFibIndex; ++k) CHECK(fib(k) == fib(k - 1) + fib(k - 2));
}

TEST_CASE("largest_fib_leq") {
  CHECK(largest_fib_leq(7) == FibIndexedValue{5, 4});
  CHECK(largest_fib_leq(1) == FibIndexedValue{1, 1});
  CHECK(largest_fib_leq(2024) == FibIndexedValue{1597, 16});
  CHECK(largest_fib_leq(8) == FibIndexedValue{8, 5});
  CHECK_THROWS_AS(largest_fib_leq(0), DomainError);
  for (Value n = 1; n < 5000; ++n) {
    const auto f = largest_fib_leq(n);
    CHECK(f.value <= n);
    CHECK(n < fib(f.index + 1));
  }
}

TEST_CASE("zeckendorf examples") {
  CHECK(zeckendorf(7) == Heights{0, 1, 0, 1});
  CHECK(zeckendorf(1) == Heights{1});

  const Heights z = zeckendorf(2024);
  std::vector<int> ones;
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (z[i] == 1) ones.push_back(static_cast<int>(i) + 1);
  }
  CHECK(ones == std::vector<int>{3, 6, 8, 13, 16});
  CHECK_THROWS_AS(zeckendorf(0), DomainError);
}

TEST_CASE("value_of") {
  const Heights h{0, 1, 0, 1};
  CHECK(value_of(h) == 7);
  CHECK(value_of(Heights{}) == 0);
  CHECK(value_of(Heights{4}) == 4);
  CHECK(value_of(Heights{1, 1, 1}) == 6);
  Heights huge(kMaxFibIndex, 0);
  huge.back() = 5;
  CHECK_THROWS_AS(value_of(huge), OverflowError);
}

TEST_CASE("decomposition_stats") {
  const auto s7 = decomposition_stats(7);
  CHECK(s7.terms == 2);
  CHECK(s7.index_sum == 6);
  const auto s1 = decomposition_stats(1);
  CHECK(s1.terms == 1);
  CHECK(s1.index_sum == 1);
  const auto s = decomposition_stats(2024);
  CHECK(s.terms == 5);
  CHECK(s.index_sum == 46);
  CHECK(s.heights == zeckendorf(2024));
}

TEST_CASE("zeckendorf invariants for every n up to one million") {
  // Independent Fibonacci table built here rather than through fib().
  std::vector<Value> f{1, 2};
  while (f.back() < 2'000'000) f.push_back(f[f.size() - 1] + f[f.size() - 2]);

  bool all_ok = true;
  for (Value n = 1; n <= 1'000'000; ++n) {
    const Heights z = zeckendorf(n);
    Value sum = 0;
    bool ok = !z.empty() && z.back() == 1;
    for (std::size_t i = 0; i < z.size() && ok; ++i) {
      ok = z[i] <= 1 && !(i > 0 && z[i] == 1 && z[i - 1] == 1);
      sum += z[i] * f[i];
    }
    if (!ok || sum != n || !is_zeckendorf_form(z)) {
      all_ok = false;
      FAIL_CHECK("bad decomposition of " << n);
      break;
    }
  }
  CHECK(all_ok);
}

TEST_CASE("is_zeckendorf_form") {
  CHECK(is_zeckendorf_form(Heights{1, 0, 1}));
  CHECK_FALSE(is_zeckendorf_form(Heights{1, 1}));
  CHECK_FALSE(is_zeckendorf_form(Heights{2}));
}
