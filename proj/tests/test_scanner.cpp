#include <algorithm>
#include <cmath>
#include <set>

#include "doctest.h"
#include "helpers.hpp"
#include "iseg/error.hpp"
#include "iseg/scanner.hpp"

using namespace iseg;

TEST_CASE("window lengths") {
  ScanConfig cfg;
  cfg.w_min = 1;
  cfg.w_max = 3;
  CHECK(window_lengths(cfg) == std::vector<std::size_t>{1, 2, 3});

  cfg.w_min = 10;
  cfg.w_max = 14;
  cfg.rho = 1.2;
  CHECK(window_lengths(cfg) == std::vector<std::size_t>{10, 12});

  // Defaults, frozen from exact rational evaluation of ceil(1.1^i).
  const std::vector<std::size_t> defaults{
      1,  2,  3,  4,  5,  6,  7,  8,  9,  10,  11,  12,  14,  15,  16,  18,  20,  22,  24,  26,  29,  31,  35,
      38, 42, 46, 50, 55, 61, 67, 73, 81, 89, 98, 107, 118, 130, 143, 157, 172, 190, 208, 229, 252, 277};
  CHECK(window_lengths(ScanConfig{}) == defaults);

  cfg = ScanConfig{};
  cfg.exhaustive = true;
  cfg.w_min = 3;
  cfg.w_max = 7;
  CHECK(window_lengths(cfg) == std::vector<std::size_t>{3, 4, 5, 6, 7});
}

TEST_CASE("window stride") {
  ScanConfig cfg;
  CHECK(window_stride(1, cfg) == 1);
  CHECK(window_stride(5, cfg) == 1);
  CHECK(window_stride(6, cfg) == 2);
  CHECK(window_stride(10, cfg) == 2);
  CHECK(window_stride(277, cfg) == 56);
  cfg.exhaustive = true;
  CHECK(window_stride(277, cfg) == 1);
}

TEST_CASE("config validation") {
  auto bad = [](auto mutate) {
    ScanConfig c;
    mutate(c);
    CHECK_THROWS_AS(c.validate(), ValidationError);
  };
  bad([](ScanConfig& c) { c.w_min = 0; });
  bad([](ScanConfig& c) { c.w_max = 0; });
  bad([](ScanConfig& c) { c.rho = 1.0; });
  bad([](ScanConfig& c) { c.rho = std::nan(""); });
  bad([](ScanConfig& c) { c.p_s = 0.0; });
  bad([](ScanConfig& c) { c.alpha = 1.0; });
  bad([](ScanConfig& c) { c.p_b = -1.0; });
  bad([](ScanConfig& c) { c.k_refine = 1; });
  CHECK_NOTHROW(ScanConfig{}.validate());
}

TEST_CASE("clamping to short profiles warns") {
  std::vector<std::string> warnings;
  const ScanConfig c = ScanConfig{}.clamped_to(40, &warnings);
  CHECK(c.w_max == 40);
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].find("clamped") != std::string::npos);

  warnings.clear();
  ScanConfig wide;
  wide.w_min = 50;
  const ScanConfig d = wide.clamped_to(20, &warnings);
  CHECK(d.w_max == 20);
  CHECK(d.w_min == 20);
  CHECK(warnings.size() == 2);

  warnings.clear();
  ScanConfig{}.clamped_to(1000, &warnings);
  CHECK(warnings.empty());
}

TEST_CASE("obvious block is the top candidate") {
  std::vector<double> v(50, 0.0);
  for (std::size_t i = 20; i < 30; ++i) v[i] = 5.0;
  PrefixSums ps(v);
  ScanConfig cfg = ScanConfig{}.clamped_to(v.size());
  const auto cands = scan(ps, NoiseModel{1.0, 0.0}, cfg);
  REQUIRE(!cands.empty());
  CHECK(cands.front().start == 20);
  CHECK(cands.front().end == 30);
  CHECK(cands.front().mean == doctest::Approx(5.0));
  CHECK(cands.front().z == doctest::Approx(5.0 * std::sqrt(10.0)));
}

TEST_CASE("scan output is exactly the retained grid windows, ranked") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto v = testing::random_profile(300 + 37 * seed, seed);
    PrefixSums ps(v);
    const NoiseModel noise{1.0, 0.0};
    ScanConfig cfg;
    cfg.w_max = 120;
    cfg.p_s = 0.01;
    ScanCounters counters;
    const auto cands = scan(ps, noise, cfg, &counters);

    // Independent enumeration of the grid.
    std::set<std::pair<std::size_t, std::size_t>> grid;
    const std::size_t n = v.size();
    for (std::size_t w : window_lengths(cfg)) {
      const std::size_t stride = (w + 4) / 5;
      for (std::size_t l = 0; l + w <= n; l += stride) grid.insert({l, l + w});
      grid.insert({n - w, n});
    }
    std::set<std::pair<std::size_t, std::size_t>> expected;
    for (const auto& [l, r] : grid) {
      if (testing::direct_stats(v, l, r, noise, cfg.sides).log_p <= std::log(cfg.p_s)) {
        expected.insert({l, r});
      }
    }
    std::set<std::pair<std::size_t, std::size_t>> got;
    for (const auto& c : cands) got.insert({c.start, c.end});
    CHECK(got == expected);
    CHECK(got.size() == cands.size());
    CHECK(counters.windows_evaluated == grid.size());
    CHECK(counters.prefix == 2 * n);
    CHECK(std::is_sorted(cands.begin(), cands.end(), RankLess{}));
    for (const auto& c : cands) {
      const auto d = testing::direct_stats(v, c.start, c.end, noise, cfg.sides);
      CHECK(testing::rel_close(c.mean, d.mean, 1e-9));
      CHECK(testing::rel_close(c.z, d.z, 1e-9));
      CHECK(testing::rel_close(c.log_p, d.log_p, 1e-9));
      CHECK(c.history == kScanned);
    }
  }
}

TEST_CASE("one-sided scan keeps only upward windows") {
  auto v = testing::gaussian_values(400, 8);
  for (std::size_t i = 100; i < 120; ++i) v[i] += 3.0;
  for (std::size_t i = 250; i < 270; ++i) v[i] -= 3.0;
  PrefixSums ps(v);
  ScanConfig cfg;
  cfg.sides = Sides::one;
  const auto cands = scan(ps, NoiseModel{}, cfg.clamped_to(v.size()));
  REQUIRE(!cands.empty());
  for (const auto& c : cands) CHECK(c.z > 0.0);
}

TEST_CASE("predicted operation counts") {
  ScanConfig cfg;
  cfg.w_min = 10;
  cfg.w_max = 10;
  // One scale: (N - W) * W and N + (N - W).
  auto c = predicted_op_counts(100, cfg);
  CHECK(c.brute == 900);
  CHECK(c.memoized == 190);

  // Frozen from exact rational sums over rho^i <= 300.
  c = predicted_op_counts(1000, ScanConfig{});
  CHECK(c.brute == 2593349);
  CHECK(c.memoized == 57965);
  c = predicted_op_counts(5000, ScanConfig{});
  CHECK(c.brute == 14732615);
  CHECK(c.memoized == 301965);
}

TEST_CASE("instrumented scan stays within the memoized bound") {
  const auto v = testing::gaussian_values(5000, 21);
  PrefixSums ps(v);
  ScanCounters counters;
  scan(ps, NoiseModel{}, ScanConfig{}, &counters);
  const auto predicted = predicted_op_counts(5000, ScanConfig{});
  CHECK(counters.total() <= 3 * predicted.memoized);
  CHECK(counters.total() == counters.prefix + counters.window);
}
