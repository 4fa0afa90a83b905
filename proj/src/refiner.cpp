#include "iseg/refiner.hpp"

#include <algorithm>
#include <string>

#include "iseg/error.hpp"

namespace iseg {

const char* to_string(MoveKind kind) {
  switch (kind) {
    case MoveKind::expand_left: return "expand_left";
    case MoveKind::expand_right: return "expand_right";
    case MoveKind::shrink_left: return "shrink_left";
    case MoveKind::shrink_right: return "shrink_right";
    case MoveKind::merge: return "merge";
  }
  return "unknown";
}

namespace {

void record(MoveLog* log, MoveKind kind, const Candidate& before, const Candidate& after) {
  if (!(after.log_p < before.log_p)) {
    throw InvariantError(std::string("accepted ") + to_string(kind) +
                         " did not lower the p-value");
  }
  if (log) {
    log->push_back(Move{kind, before.start, before.end, after.start, after.end, before.log_p,
                        after.log_p});
  }
}

}  // namespace

RefineContext::RefineContext(const PrefixSums& sums, NoiseModel noise, Sides sides,
                             std::size_t k_refine, MoveLog* log)
    : sums_(&sums), noise_(noise), sides_(sides), k_refine_(k_refine), log_(log) {
  if (k_refine_ < 2) throw ValidationError("k_refine must be at least 2");
}

Candidate RefineContext::evaluate(std::size_t l, std::size_t r, std::uint8_t history) const {
  const SegmentStats s = segment_stats(*sums_, l, r, noise_, sides_);
  return Candidate{l, r, s.mean, s.z, s.log_p, history};
}

void RefineContext::accept(const Candidate& before, const Candidate& after, MoveKind kind) {
  record(log_, kind, before, after);
  boundaries_.erase(before.start);
  boundaries_.insert(after.start, after.end);
}

Candidate RefineContext::move_boundary(const Candidate& seg, Edge edge, bool outward,
                                       MoveKind kind) {
  Candidate cur = seg;
  const std::uint8_t history = static_cast<std::uint8_t>(seg.history | kRefined);
  auto with_edge = [&](std::size_t b) {
    return edge == Edge::left ? evaluate(b, cur.end, history) : evaluate(cur.start, b, history);
  };

  for (;;) {
    const std::size_t len = cur.length();
    const std::size_t step = (len + k_refine_ - 1) / k_refine_;
    const std::size_t b0 = edge == Edge::left ? cur.start : cur.end;

    // Proposal, truncated at the nearest legal boundary.
    std::size_t proposal = b0;
    if (edge == Edge::left && outward) {
      const std::size_t limit = boundaries_.left_limit(cur.start);
      proposal = b0 - std::min(step, b0 - limit);
    } else if (edge == Edge::left) {
      proposal = std::min(b0 + step, cur.end - 1);
    } else if (outward) {
      const std::size_t limit = boundaries_.right_limit(cur.start, size());
      proposal = b0 + std::min(step, limit - b0);
    } else {
      proposal = std::max(b0 - std::min(step, b0), cur.start + 1);
    }
    if (proposal == b0) break;

    const Candidate jumped = with_edge(proposal);
    if (jumped.log_p < cur.log_p) {
      accept(cur, jumped, kind);
      cur = jumped;
      continue;
    }

    // Exhaustive search over the open range between b0 and the rejected
    // proposal, nearest to b0 first; ties keep the smaller move.
    Candidate best = cur;
    const bool up = proposal > b0;
    for (std::size_t b = up ? b0 + 1 : b0 - 1; b != proposal; b = up ? b + 1 : b - 1) {
      const Candidate trial = with_edge(b);
      if (trial.log_p < best.log_p) best = trial;
    }
    if (best.log_p < cur.log_p) {
      accept(cur, best, kind);
      cur = best;
    }
    break;
  }
  return cur;
}

Candidate RefineContext::expand_left(const Candidate& seg) {
  return move_boundary(seg, Edge::left, true, MoveKind::expand_left);
}

Candidate RefineContext::expand_right(const Candidate& seg) {
  return move_boundary(seg, Edge::right, true, MoveKind::expand_right);
}

Candidate RefineContext::shrink_left(const Candidate& seg) {
  if (seg.length() < 2) return seg;
  return move_boundary(seg, Edge::left, false, MoveKind::shrink_left);
}

Candidate RefineContext::shrink_right(const Candidate& seg) {
  if (seg.length() < 2) return seg;
  return move_boundary(seg, Edge::right, false, MoveKind::shrink_right);
}

Candidate RefineContext::refine(const Candidate& seg) {
  Candidate cur = seg;
  for (;;) {
    const Candidate before = cur;
    cur = expand_left(cur);
    cur = expand_right(cur);
    cur = shrink_left(cur);
    cur = shrink_right(cur);
    if (cur.start == before.start && cur.end == before.end) break;
  }
  return cur;
}

SelectedSet refine_all(RefineContext& ctx, const SelectedSet& selected) {
  for (const Candidate& seg : selected) ctx.commit(seg);
  SelectedSet order = selected;
  std::sort(order.begin(), order.end(), RankLess{});

  SelectedSet out;
  out.reserve(order.size());
  for (const Candidate& seg : order) out.push_back(ctx.refine(seg));
  std::sort(out.begin(), out.end(), StartLess{});
  if (!pairwise_disjoint(out)) throw InvariantError("refinement produced overlapping segments");
  return out;
}

SelectedSet merge_adjacent(const RefineContext& ctx, SelectedSet segments) {
  std::sort(segments.begin(), segments.end(), StartLess{});
  std::size_t i = 0;
  while (i + 1 < segments.size()) {
    const Candidate& a = segments[i];
    const Candidate& b = segments[i + 1];
    Candidate span = ctx.evaluate(a.start, b.end,
                                  static_cast<std::uint8_t>(a.history | b.history | kMerged));
    if (span.log_p < a.log_p && span.log_p < b.log_p) {
      record(ctx.log(), MoveKind::merge, a.log_p > b.log_p ? b : a, span);
      segments[i] = span;
      segments.erase(segments.begin() + static_cast<std::ptrdiff_t>(i) + 1);
      if (i > 0) --i;
    } else {
      ++i;
    }
  }
  if (!pairwise_disjoint(segments)) throw InvariantError("merge produced overlapping segments");
  return segments;
}

bool is_merge_fixpoint(const RefineContext& ctx, const SelectedSet& segments) {
  for (std::size_t i = 0; i + 1 < segments.size(); ++i) {
    const Candidate span = ctx.evaluate(segments[i].start, segments[i + 1].end);
    if (span.log_p < segments[i].log_p && span.log_p < segments[i + 1].log_p) return false;
  }
  return true;
}

}  // namespace iseg
