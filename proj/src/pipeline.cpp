#include "iseg/pipeline.hpp"

#include <cmath>

#include "iseg/error.hpp"
#include "iseg/selector.hpp"

namespace iseg {

NoiseModel resolve_noise(const Profile& profile, const ScanConfig& cfg,
                         std::optional<double> sigma) {
  if (sigma) {
    if (!(*sigma > 0.0) || !std::isfinite(*sigma)) {
      throw ValidationError("sigma must be a positive finite number");
    }
    return NoiseModel{*sigma, cfg.background};
  }
  return estimate_sigma_mad(profile, cfg.background);
}

SegmentationResult segment_profile(const Profile& profile, const ScanConfig& cfg,
                                   std::optional<double> sigma, PipelineTrace* trace) {
  profile.validate();
  cfg.validate();
  PipelineTrace local;
  PipelineTrace& t = trace ? *trace : local;

  const ScanConfig run_cfg = cfg.clamped_to(profile.size(), &t.warnings);
  const NoiseModel noise = resolve_noise(profile, run_cfg, sigma);
  const PrefixSums sums(profile);

  const std::vector<Candidate> candidates = scan(sums, noise, run_cfg, &t.counters);
  t.candidates = candidates.size();
  t.selected = select_nonoverlapping(candidates);

  RefineContext ctx(sums, noise, run_cfg.sides, run_cfg.k_refine, &t.moves);
  t.refined = refine_all(ctx, t.selected);
  t.merged = merge_adjacent(ctx, t.refined);

  TestFamily family;
  family.tests = t.counters.windows_evaluated;
  family.log_p.reserve(candidates.size());
  for (const Candidate& c : candidates) family.log_p.push_back(c.log_p);
  return finalize(sums, noise, t.merged, run_cfg, &family);
}

}  // namespace iseg
