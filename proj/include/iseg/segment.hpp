#pragma once

#include <cstddef>
#include <cstdint>
#include <tuple>
#include <vector>

namespace iseg {

// Provenance bits recorded on every segment.
enum History : std::uint8_t {
  kScanned = 1u << 0,
  kRefined = 1u << 1,
  kMerged = 1u << 2,
};

// A half-open interval [start, end) with its cached test statistics.
struct Candidate {
  std::size_t start = 0;
  std::size_t end = 0;
  double mean = 0.0;
  double z = 0.0;
  double log_p = 0.0;
  std::uint8_t history = kScanned;

  std::size_t length() const noexcept { return end - start; }
  bool overlaps(std::size_t l, std::size_t r) const noexcept { return start < r && l < end; }

  friend bool operator==(const Candidate&, const Candidate&) = default;
};

// Total order used for ranking: smaller p first, then longer, then leftmost.
struct RankLess {
  bool operator()(const Candidate& a, const Candidate& b) const noexcept {
    const auto la = a.length();
    const auto lb = b.length();
    return std::tie(a.log_p, lb, a.start) < std::tie(b.log_p, la, b.start);
  }
};

struct StartLess {
  bool operator()(const Candidate& a, const Candidate& b) const noexcept {
    return a.start < b.start;
  }
};

// Disjoint segments, sorted by start.
using SelectedSet = std::vector<Candidate>;

bool pairwise_disjoint(const SelectedSet& sorted_by_start);

}  // namespace iseg
