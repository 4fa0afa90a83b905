#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "iseg/error.hpp"
#include "iseg/scanner.hpp"
#include "iseg/segment.hpp"
#include "iseg/stats.hpp"

namespace iseg {

// Per-position confusion counts with precision, recall and F1. A 0/0 ratio
// is reported as 0 and sets `degenerate`.
struct EvalReport {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  bool degenerate = false;
};

// Marks every position covered by a segment. Segments must be disjoint and
// inside [0, n).
template <typename Segments>
std::vector<bool> positions_mask(const Segments& segments, std::size_t n) {
  std::vector<bool> mask(n, false);
  for (const auto& seg : segments) {
    if (seg.start >= seg.end || seg.end > n) {
      throw ValidationError("segment [" + std::to_string(seg.start) + "," +
                            std::to_string(seg.end) + ") outside a profile of length " +
                            std::to_string(n));
    }
    for (std::size_t i = seg.start; i < seg.end; ++i) {
      if (mask[i]) throw ValidationError("overlapping segments in mask");
      mask[i] = true;
    }
  }
  return mask;
}

// Throws ValidationError when the masks differ in length.
EvalReport score(const std::vector<bool>& predicted, const std::vector<bool>& truth);

inline constexpr std::size_t kBruteForceMaxN = 500;

// Exhaustive reference: every segment with length in [w_min, w_max] and
// p <= p_s, then greedy disjoint selection by (p, length desc, start) with
// linear-scan overlap checks. Sorted by start. Quadratic; refuses profiles
// longer than `max_n` with RefusalError.
SelectedSet brute_force_segment(const PrefixSums& sums, const NoiseModel& noise,
                                const ScanConfig& cfg, std::size_t max_n = kBruteForceMaxN);

void write_eval_header(std::ostream& out);
void write_eval_row(std::ostream& out, const std::string& id, const EvalReport& report);
// Summary row with the mean F1, precision and recall over `reports`.
void write_eval_summary(std::ostream& out, const std::vector<EvalReport>& reports);

}  // namespace iseg
