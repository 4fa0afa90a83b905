#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "iseg/error.hpp"
#include "iseg/evaluator.hpp"
#include "iseg/pipeline.hpp"

using namespace iseg;

TEST_CASE("pipeline finds planted blocks") {
  auto v = testing::gaussian_values(2000, 5);
  for (std::size_t i = 300; i < 360; ++i) v[i] += 1.5;
  for (std::size_t i = 1200; i < 1210; ++i) v[i] -= 3.0;
  v[1700] += 7.0;
  PipelineTrace trace;
  const auto res = segment_profile(testing::make_profile(v), ScanConfig{}, std::nullopt, &trace);
  CHECK(trace.warnings.empty());
  CHECK(trace.candidates > 0);
  CHECK(trace.selected.size() == trace.refined.size());
  CHECK(trace.merged.size() <= trace.refined.size());
  CHECK(res.bh_tests == trace.counters.windows_evaluated);

  auto significant_at = [&](std::size_t l, std::size_t r) -> const SegmentRecord* {
    for (const auto& rec : res.records) {
      if (rec.significant && rec.start < r && l < rec.end) return &rec;
    }
    return nullptr;
  };
  const SegmentRecord* wide = significant_at(300, 360);
  const SegmentRecord* dip = significant_at(1200, 1210);
  const SegmentRecord* spike = significant_at(1700, 1701);
  REQUIRE(wide);
  REQUIRE(dip);
  REQUIRE(spike);
  CHECK(std::abs(long(wide->start) - 300) <= 5);
  CHECK(std::abs(long(wide->end) - 360) <= 5);
  CHECK(dip->z < 0);
  CHECK(spike->start == 1700);
  CHECK(spike->end == 1701);
  for (const auto& r : res.records) {
    const auto d = testing::direct_stats(v, r.start, r.end, res.noise, Sides::two);
    CHECK(testing::rel_close(r.log_p, d.log_p, 1e-9));
  }
}

TEST_CASE("pipeline is deterministic") {
  const auto v = testing::random_profile(3000, 77);
  const auto a = segment_profile(testing::make_profile(v), ScanConfig{});
  const auto b = segment_profile(testing::make_profile(v), ScanConfig{});
  REQUIRE(a.records.size() == b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    CHECK(a.records[i].start == b.records[i].start);
    CHECK(a.records[i].end == b.records[i].end);
    CHECK(a.records[i].log_p == b.records[i].log_p);
  }
}

TEST_CASE("noise handling") {
  const std::vector<double> zeros(100, 0.0);
  CHECK_THROWS_AS(segment_profile(testing::make_profile(zeros), ScanConfig{}),
                  DegenerateScaleError);
  const auto res = segment_profile(testing::make_profile(zeros), ScanConfig{}, 1.0);
  CHECK(res.records.empty());
  CHECK(res.noise.sigma == 1.0);
  CHECK_THROWS_AS(segment_profile(testing::make_profile(zeros), ScanConfig{}, -1.0),
                  ValidationError);
  CHECK_THROWS_AS(segment_profile(Profile{}, ScanConfig{}), EmptyInputError);
}

TEST_CASE("short profiles are clamped with a warning") {
  PipelineTrace trace;
  segment_profile(testing::make_profile(testing::gaussian_values(50, 2)), ScanConfig{},
                  std::nullopt, &trace);
  REQUIRE(trace.warnings.size() == 1);
  // A single point works with an explicit sigma.
  const auto one = segment_profile(testing::make_profile({9.0}), ScanConfig{}, 1.0);
  REQUIRE(one.records.size() == 1);
  CHECK(one.records[0].significant);
}

TEST_CASE("exhaustive selection equals brute force before refinement") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto v = testing::random_profile(120, seed);
    ScanConfig cfg;
    cfg.exhaustive = true;
    PipelineTrace trace;
    const Profile p = testing::make_profile(v);
    segment_profile(p, cfg, 1.0, &trace);
    PrefixSums ps(v);
    CHECK(trace.selected == brute_force_segment(ps, NoiseModel{1.0, 0.0}, cfg.clamped_to(120)));
  }
}

TEST_CASE("segment family option") {
  auto v = testing::gaussian_values(1000, 9);
  for (std::size_t i = 100; i < 140; ++i) v[i] += 2.0;
  ScanConfig cfg;
  cfg.bh_family = BhFamily::segments;
  const auto res = segment_profile(testing::make_profile(v), cfg);
  CHECK(res.bh_tests == res.records.size());
  bool found = false;
  for (const auto& r : res.records) found = found || (r.significant && r.start < 140 && r.end > 100);
  CHECK(found);
}
