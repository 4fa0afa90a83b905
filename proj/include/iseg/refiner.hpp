#pragma once

#include <cstddef>
#include <vector>

#include "iseg/segment.hpp"
#include "iseg/selector.hpp"
#include "iseg/stats.hpp"

namespace iseg {

enum class MoveKind { expand_left, expand_right, shrink_left, shrink_right, merge };

const char* to_string(MoveKind kind);

// One accepted boundary change or merge.
struct Move {
  MoveKind kind;
  std::size_t before_start;
  std::size_t before_end;
  std::size_t after_start;
  std::size_t after_end;
  double before_log_p;
  double after_log_p;
};

using MoveLog = std::vector<Move>;

// Shared read-only data for boundary refinement plus the mutable set of
// committed segment boundaries. Committed intervals stay disjoint through
// every accepted move.
class RefineContext {
 public:
  RefineContext(const PrefixSums& sums, NoiseModel noise, Sides sides, std::size_t k_refine,
                MoveLog* log = nullptr);

  std::size_t size() const noexcept { return sums_->size(); }
  const BoundarySet& boundaries() const noexcept { return boundaries_; }
  MoveLog* log() const noexcept { return log_; }

  void commit(const Candidate& seg) { boundaries_.insert(seg.start, seg.end); }
  void release(const Candidate& seg) { boundaries_.erase(seg.start); }

  // Statistics of [l, r) recomputed from the running sums.
  Candidate evaluate(std::size_t l, std::size_t r, std::uint8_t history = kScanned) const;

  // Each operation takes a committed segment and returns its (re-committed)
  // replacement. The two-phase schedule: jump the boundary by ceil(L/K) while
  // that lowers p; on the first failed jump, search every boundary strictly
  // between the old position and the rejected one, keep the best if it lowers
  // p, and stop.
  Candidate expand_left(const Candidate& seg);
  Candidate expand_right(const Candidate& seg);
  Candidate shrink_left(const Candidate& seg);
  Candidate shrink_right(const Candidate& seg);

  // Repeats expand_left, expand_right, shrink_left, shrink_right until a full
  // pass changes nothing.
  Candidate refine(const Candidate& seg);

 private:
  enum class Edge { left, right };
  Candidate move_boundary(const Candidate& seg, Edge edge, bool outward, MoveKind kind);
  void accept(const Candidate& before, const Candidate& after, MoveKind kind);

  const PrefixSums* sums_;
  NoiseModel noise_;
  Sides sides_;
  std::size_t k_refine_;
  MoveLog* log_;
  BoundarySet boundaries_;
};

// Commits every segment, then refines them best-p first. Output sorted by start.
SelectedSet refine_all(RefineContext& ctx, const SelectedSet& selected);

// Replaces consecutive pairs by their span (gap included) whenever the span
// has a smaller p than both members, until no pair qualifies.
SelectedSet merge_adjacent(const RefineContext& ctx, SelectedSet segments);

// True when no consecutive pair of `segments` would merge.
bool is_merge_fixpoint(const RefineContext& ctx, const SelectedSet& segments);

}  // namespace iseg
