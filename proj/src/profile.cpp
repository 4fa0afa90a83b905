#include "iseg/profile.hpp"

#include <cmath>

#include "iseg/error.hpp"

namespace iseg {

void Profile::validate() const {
  if (values.empty()) throw EmptyInputError();
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw ValidationError("non-finite value at index " + std::to_string(i));
    }
  }
  if (!positions.empty()) {
    if (positions.size() != values.size()) {
      throw ValidationError("positions and values differ in length");
    }
    for (std::size_t i = 1; i < positions.size(); ++i) {
      if (positions[i] <= positions[i - 1]) {
        throw ValidationError("positions not strictly increasing at index " + std::to_string(i) +
                              " (" + std::to_string(positions[i - 1]) + " then " +
                              std::to_string(positions[i]) + ")");
      }
    }
  }
  if (!ends.empty()) {
    if (ends.size() != values.size() || positions.empty()) {
      throw ValidationError("interval ends require matching positions");
    }
    for (std::size_t i = 0; i < ends.size(); ++i) {
      if (ends[i] <= positions[i]) {
        throw ValidationError("empty interval at index " + std::to_string(i));
      }
    }
  }
}

std::int64_t Profile::coordinate_start(std::size_t start) const {
  if (positions.empty()) return static_cast<std::int64_t>(start);
  return positions[start];
}

std::int64_t Profile::coordinate_end(std::size_t end) const {
  if (positions.empty()) return static_cast<std::int64_t>(end);
  if (!ends.empty()) return ends[end - 1];
  return positions[end - 1] + 1;
}

}  // namespace iseg
