#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <vector>

#include "iseg/segment.hpp"

namespace iseg {

// Committed, pairwise disjoint half-open intervals keyed by start.
class BoundarySet {
 public:
  bool empty() const noexcept { return by_start_.empty(); }
  std::size_t size() const noexcept { return by_start_.size(); }

  // True iff [l, r) intersects a stored interval. Looks only at the stored
  // intervals on either side of l.
  bool overlaps(std::size_t l, std::size_t r) const;

  // Throws InvariantError if [l, r) overlaps a stored interval.
  void insert(std::size_t l, std::size_t r);
  void erase(std::size_t l);

  // End of the closest interval starting before `l`, or 0.
  std::size_t left_limit(std::size_t l) const;
  // Start of the closest interval starting after `l`, or `n`.
  std::size_t right_limit(std::size_t l, std::size_t n) const;

  const std::map<std::size_t, std::size_t>& intervals() const noexcept { return by_start_; }

 private:
  std::map<std::size_t, std::size_t> by_start_;
};

inline bool check_overlap(const BoundarySet& boundaries, std::size_t l, std::size_t r) {
  return boundaries.overlaps(l, r);
}

// Candidates ranked by (p, length desc, start) plus the committed boundaries.
class CandidateStore {
 public:
  explicit CandidateStore(const std::vector<Candidate>& candidates);

  bool empty() const noexcept { return by_p_.empty(); }
  std::size_t size() const noexcept { return by_p_.size(); }

  // Removes and returns the best-ranked candidate.
  Candidate pop_best();
  bool erase(const Candidate& c);

  // Commits `c` unless it overlaps a previous commitment.
  bool try_commit(const Candidate& c);

  const BoundarySet& boundaries() const noexcept { return boundaries_; }

 private:
  std::set<Candidate, RankLess> by_p_;
  BoundarySet boundaries_;
};

// Greedy disjoint selection by ascending p-value. Result sorted by start.
SelectedSet select_nonoverlapping(const std::vector<Candidate>& candidates);

}  // namespace iseg
