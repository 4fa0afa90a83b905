#pragma once

#include <optional>
#include <string>
#include <vector>

#include "iseg/profile.hpp"
#include "iseg/refiner.hpp"
#include "iseg/scanner.hpp"
#include "iseg/significance.hpp"

namespace iseg {

// Intermediate products of one run, for diagnostics and tests.
struct PipelineTrace {
  std::vector<std::string> warnings;
  ScanCounters counters;
  std::size_t candidates = 0;
  SelectedSet selected;  // after greedy selection, before refinement
  SelectedSet refined;
  SelectedSet merged;
  MoveLog moves;
};

// MAD estimate unless `sigma` is given.
NoiseModel resolve_noise(const Profile& profile, const ScanConfig& cfg,
                         std::optional<double> sigma);

// scan -> select -> refine -> merge -> finalize.
SegmentationResult segment_profile(const Profile& profile, const ScanConfig& cfg,
                                   std::optional<double> sigma = std::nullopt,
                                   PipelineTrace* trace = nullptr);

}  // namespace iseg
