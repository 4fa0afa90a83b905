#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "iseg/segment.hpp"
#include "iseg/stats.hpp"

namespace iseg {

// Hypothesis family for Benjamini-Hochberg. `windows`: every scanned window
// is a test and the resulting cutoff is applied to the final segments.
// `segments`: only the final segments are tested.
enum class BhFamily { windows, segments };

struct ScanConfig {
  std::size_t w_min = 1;
  std::size_t w_max = 300;
  double rho = 1.1;
  double p_s = 0.001;
  double alpha = 0.01;
  std::optional<double> p_b;  // biological cutoff on |mean - background|; unset = disabled
  std::size_t k_refine = 10;
  double background = 0.0;
  Sides sides = Sides::two;
  BhFamily bh_family = BhFamily::windows;
  // Scan every length in [w_min, w_max] at stride 1. Used for oracle runs.
  bool exhaustive = false;
  // Windows step by ceil(W / stride_divisor).
  std::size_t stride_divisor = 5;

  // Throws ValidationError on out-of-range parameters.
  void validate() const;

  // Copy with w_max (and w_min) limited to the profile length. Appends a
  // message to `warnings` for every adjustment made.
  ScanConfig clamped_to(std::size_t n, std::vector<std::string>* warnings = nullptr) const;
};

// Sorted distinct { ceil(rho^i * w_min) } not exceeding w_max. In exhaustive
// mode every integer in [w_min, w_max].
std::vector<std::size_t> window_lengths(const ScanConfig& cfg);

inline std::size_t window_stride(std::size_t w, const ScanConfig& cfg) {
  if (cfg.exhaustive) return 1;
  return (w + cfg.stride_divisor - 1) / cfg.stride_divisor;
}

// Additions performed by one scan. `prefix` counts the running-sum build,
// `window` one subtraction per evaluated window.
struct ScanCounters {
  std::uint64_t prefix = 0;
  std::uint64_t window = 0;
  std::uint64_t windows_evaluated = 0;

  std::uint64_t total() const noexcept { return prefix + window; }
};

// Every window with p <= p_s, ordered by RankLess. `counters`, if given,
// receives the operation counts (prefix build included).
std::vector<Candidate> scan(const PrefixSums& sums, const NoiseModel& noise,
                            const ScanConfig& cfg, ScanCounters* counters = nullptr);

struct OpCounts {
  std::uint64_t brute = 0;
  std::uint64_t memoized = 0;
};

// Closed-form operation counts for brute-force window sums versus running
// sums, over the real-valued scales rho^i * w_min <= w_max.
OpCounts predicted_op_counts(std::size_t n, const ScanConfig& cfg);

}  // namespace iseg
