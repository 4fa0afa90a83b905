#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace iseg {

// An ordered run of measurements along a genome.
//
// `positions`, when present, holds one genomic coordinate (bp) per value and
// is strictly increasing. `ends` is only filled for interval inputs
// (bedGraph) and holds the exclusive end coordinate of each measurement.
struct Profile {
  std::vector<double> values;
  std::vector<std::int64_t> positions;
  std::vector<std::int64_t> ends;
  std::string label;

  std::size_t size() const noexcept { return values.size(); }
  bool has_positions() const noexcept { return !positions.empty(); }

  // Throws EmptyInputError or ValidationError.
  void validate() const;

  // Genomic coordinate span of the half-open index range [start, end).
  // Falls back to the indices themselves when no positions are attached.
  std::int64_t coordinate_start(std::size_t start) const;
  std::int64_t coordinate_end(std::size_t end) const;
};

}  // namespace iseg
