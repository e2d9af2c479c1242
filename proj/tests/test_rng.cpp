#include "doctest.h"

#include <cmath>
#include <vector>

#include "bellbound/rng.hpp"

using namespace bellbound;

TEST_CASE("streams are pure functions of (seed, stream, trial)") {
  TrialStream a(42, 7);
  TrialStream b(42, 7);
  for (int i = 0; i < 100; ++i) {
    CHECK(a.next_u64() == b.next_u64());
  }

  TrialStream c(42, 8);
  TrialStream d(43, 7);
  TrialStream e(42, 7, TrialStream::kRotationStream);
  TrialStream f(42, 7);
  bool all_equal_trial = true;
  bool all_equal_seed = true;
  bool all_equal_stream = true;
  for (int i = 0; i < 16; ++i) {
    const auto reference = f.next_u64();
    all_equal_trial &= (c.next_u64() == reference);
    all_equal_seed &= (d.next_u64() == reference);
    all_equal_stream &= (e.next_u64() == reference);
  }
  CHECK_FALSE(all_equal_trial);
  CHECK_FALSE(all_equal_seed);
  CHECK_FALSE(all_equal_stream);
}

TEST_CASE("unit draws are roughly uniform") {
  TrialStream rng(123, 0);
  const int n = 100000;
  double sum = 0.0;
  double sum_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = rng.next_unit();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    sum += u;
    sum_sq += u * u;
  }
  const double mean = sum / n;
  const double variance = sum_sq / n - mean * mean;
  CHECK(std::abs(mean - 0.5) < 0.005);          // sd(mean) ~ 0.0009
  CHECK(std::abs(variance - 1.0 / 12.0) < 0.005);
}

TEST_CASE("signs balance within and across trials") {
  long within = 0;
  long across = 0;
  const int n = 100000;
  TrialStream within_rng(5, 0);
  for (int i = 0; i < n; ++i) {
    within += within_rng.next_sign();
    TrialStream per_trial(5, static_cast<std::uint64_t>(i));
    across += per_trial.next_sign();
  }
  CHECK(std::abs(within) < 4 * std::sqrt(static_cast<double>(n)));
  CHECK(std::abs(across) < 4 * std::sqrt(static_cast<double>(n)));
}

TEST_CASE("next_index stays in range and covers its cells") {
  TrialStream rng(9, 1);
  std::vector<int> histogram(7, 0);
  const int n = 70000;
  for (int i = 0; i < n; ++i) {
    const auto index = rng.next_index(7);
    REQUIRE(index < 7);
    ++histogram[index];
  }
  for (int count : histogram) {
    CHECK(count > 9000);  // 10000 expected, ~10 sigma slack
    CHECK(count < 11000);
  }
}
