#include "iseg/segment.hpp"

namespace iseg {

bool pairwise_disjoint(const SelectedSet& sorted_by_start) {
  for (std::size_t i = 1; i < sorted_by_start.size(); ++i) {
    if (sorted_by_start[i].start < sorted_by_start[i - 1].end) return false;
  }
  return true;
}

}  // namespace iseg
