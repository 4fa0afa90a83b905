#include "iseg/selector.hpp"

#include <algorithm>
#include <iterator>
#include <string>

#include "iseg/error.hpp"

namespace iseg {

bool BoundarySet::overlaps(std::size_t l, std::size_t r) const {
  auto next = by_start_.upper_bound(l);
  if (next != by_start_.end() && next->first < r) return true;
  if (next != by_start_.begin()) {
    auto prev = std::prev(next);
    if (prev->second > l) return true;
  }
  return false;
}

void BoundarySet::insert(std::size_t l, std::size_t r) {
  if (l >= r || overlaps(l, r)) {
    throw InvariantError("boundary insert [" + std::to_string(l) + "," + std::to_string(r) +
                         ") breaks disjointness");
  }
  by_start_.emplace(l, r);
}

void BoundarySet::erase(std::size_t l) { by_start_.erase(l); }

std::size_t BoundarySet::left_limit(std::size_t l) const {
  auto it = by_start_.lower_bound(l);
  if (it == by_start_.begin()) return 0;
  return std::prev(it)->second;
}

std::size_t BoundarySet::right_limit(std::size_t l, std::size_t n) const {
  auto it = by_start_.upper_bound(l);
  return it == by_start_.end() ? n : it->first;
}

CandidateStore::CandidateStore(const std::vector<Candidate>& candidates)
    : by_p_(candidates.begin(), candidates.end()) {}

Candidate CandidateStore::pop_best() {
  auto node = by_p_.extract(by_p_.begin());
  return node.value();
}

bool CandidateStore::erase(const Candidate& c) { return by_p_.erase(c) > 0; }

bool CandidateStore::try_commit(const Candidate& c) {
  if (check_overlap(boundaries_, c.start, c.end)) return false;
  boundaries_.insert(c.start, c.end);
  return true;
}

SelectedSet select_nonoverlapping(const std::vector<Candidate>& candidates) {
  CandidateStore store(candidates);
  SelectedSet out;
  while (!store.empty()) {
    Candidate best = store.pop_best();
    if (store.try_commit(best)) out.push_back(best);
  }
  std::sort(out.begin(), out.end(), StartLess{});
  return out;
}

}  // namespace iseg
