#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "iseg/profile.hpp"
#include "iseg/scanner.hpp"
#include "iseg/segment.hpp"
#include "iseg/stats.hpp"

namespace iseg {

struct SegmentRecord {
  std::size_t start = 0;
  std::size_t end = 0;
  double mean = 0.0;
  double z = 0.0;
  double log_p = 0.0;
  bool significant = false;
  std::uint8_t history = kScanned;

  // exp(log_p), clamped to the smallest positive double on underflow.
  double p_value() const noexcept;
  bool p_clamped() const noexcept;
};

struct SegmentationResult {
  std::vector<SegmentRecord> records;  // sorted by start, disjoint
  double bh_threshold = 0.0;           // p-value cutoff for significance, 0 if none
  std::uint64_t bh_tests = 0;          // size of the BH hypothesis family
  ScanConfig config;
  NoiseModel noise;
};

struct BhResult {
  double threshold = 0.0;
  std::vector<bool> reject;  // input order
};

// Benjamini-Hochberg step-up over p-values.
BhResult bh_select(std::span<const double> p_values, double alpha);
// Same rule evaluated on natural-log p-values. `total_tests` (>= the number
// of values, 0 meaning equal) counts hypotheses whose p-values were not
// retained; they are taken to rank after every listed value.
BhResult bh_select_log(std::span<const double> log_p_values, double alpha,
                       std::uint64_t total_tests = 0);

// The scanned windows as a BH family: their count and the log p-values of
// those retained by the scan.
struct TestFamily {
  std::uint64_t tests = 0;
  std::vector<double> log_p;
};

// Significance cutoff from BH over a window family: the largest rejected
// p-value, and never below the first-rank level alpha / tests.
double family_cutoff(const TestFamily& family, double alpha);

// Clears `significant` on records whose |mean - background| < p_b. Records
// are kept either way.
std::vector<SegmentRecord> apply_biological_cutoff(std::vector<SegmentRecord> records,
                                                   std::optional<double> p_b, double background);

// Recomputes statistics from the profile, calls significance according to
// cfg.bh_family and applies the biological cutoff. `family` is required for
// BhFamily::windows. Throws InvariantError if a cached statistic disagrees
// with recomputation.
SegmentationResult finalize(const PrefixSums& sums, const NoiseModel& noise,
                            const SelectedSet& refined, const ScanConfig& cfg,
                            const TestFamily* family = nullptr);

}  // namespace iseg
