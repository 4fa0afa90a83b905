#include "iseg/significance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "iseg/error.hpp"

namespace iseg {

double SegmentRecord::p_value() const noexcept {
  const double p = std::exp(log_p);
  return p > 0.0 ? p : std::numeric_limits<double>::denorm_min();
}

bool SegmentRecord::p_clamped() const noexcept { return !(std::exp(log_p) > 0.0); }

BhResult bh_select_log(std::span<const double> log_p_values, double alpha,
                       std::uint64_t total_tests) {
  BhResult out;
  const std::size_t m = log_p_values.size();
  out.reject.assign(m, false);
  if (m == 0) return out;
  if (total_tests != 0 && total_tests < m) {
    throw InvariantError("BH family smaller than the p-values supplied");
  }
  const double family = static_cast<double>(total_tests == 0 ? m : total_tests);

  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return log_p_values[a] < log_p_values[b];
  });

  const double log_alpha_over_m = std::log(alpha) - std::log(family);
  std::size_t cutoff = 0;  // number rejected
  for (std::size_t i = m; i >= 1; --i) {
    if (log_p_values[order[i - 1]] <= log_alpha_over_m + std::log(static_cast<double>(i))) {
      cutoff = i;
      break;
    }
  }
  for (std::size_t i = 0; i < cutoff; ++i) out.reject[order[i]] = true;
  if (cutoff > 0) out.threshold = std::exp(log_p_values[order[cutoff - 1]]);
  return out;
}

BhResult bh_select(std::span<const double> p_values, double alpha) {
  BhResult out;
  const std::size_t m = p_values.size();
  out.reject.assign(m, false);
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return p_values[a] < p_values[b]; });
  std::size_t cutoff = 0;
  for (std::size_t i = m; i >= 1; --i) {
    if (p_values[order[i - 1]] <= alpha * static_cast<double>(i) / static_cast<double>(m)) {
      cutoff = i;
      break;
    }
  }
  for (std::size_t i = 0; i < cutoff; ++i) out.reject[order[i]] = true;
  if (cutoff > 0) out.threshold = p_values[order[cutoff - 1]];
  return out;
}

double family_cutoff(const TestFamily& family, double alpha) {
  if (family.tests == 0) return 0.0;
  const BhResult bh = bh_select_log(family.log_p, alpha, family.tests);
  return std::max(bh.threshold, alpha / static_cast<double>(family.tests));
}

std::vector<SegmentRecord> apply_biological_cutoff(std::vector<SegmentRecord> records,
                                                   std::optional<double> p_b, double background) {
  if (!p_b) return records;
  for (SegmentRecord& r : records) {
    if (std::abs(r.mean - background) < *p_b) r.significant = false;
  }
  return records;
}

SegmentationResult finalize(const PrefixSums& sums, const NoiseModel& noise,
                            const SelectedSet& refined, const ScanConfig& cfg,
                            const TestFamily* family) {
  SegmentationResult result;
  result.config = cfg;
  result.noise = noise;

  SelectedSet segs = refined;
  std::sort(segs.begin(), segs.end(), StartLess{});
  if (!pairwise_disjoint(segs)) throw InvariantError("finalize received overlapping segments");

  std::vector<double> log_ps;
  log_ps.reserve(segs.size());
  for (const Candidate& c : segs) {
    if (c.end > sums.size() || c.start >= c.end) {
      throw InvariantError("segment outside the profile");
    }
    const SegmentStats s = segment_stats(sums, c.start, c.end, noise, cfg.sides);
    const double tol = 1e-9 * std::max(1.0, std::abs(s.log_p));
    if (std::abs(s.log_p - c.log_p) > tol) {
      throw InvariantError("cached p-value of [" + std::to_string(c.start) + "," +
                           std::to_string(c.end) + ") disagrees with recomputation");
    }
    result.records.push_back(SegmentRecord{c.start, c.end, s.mean, s.z, s.log_p, false, c.history});
    log_ps.push_back(s.log_p);
  }

  if (cfg.bh_family == BhFamily::windows) {
    if (!family) throw InvariantError("window-family BH needs the scanned test family");
    result.bh_tests = family->tests;
    result.bh_threshold = family_cutoff(*family, cfg.alpha);
    const double log_cut = std::log(result.bh_threshold);
    for (SegmentRecord& r : result.records) r.significant = r.log_p <= log_cut;
  } else {
    const BhResult bh = bh_select_log(log_ps, cfg.alpha);
    result.bh_tests = log_ps.size();
    result.bh_threshold = bh.threshold;
    for (std::size_t i = 0; i < result.records.size(); ++i) {
      result.records[i].significant = bh.reject[i];
    }
  }
  result.records = apply_biological_cutoff(std::move(result.records), cfg.p_b, noise.background);
  return result;
}

}  // namespace iseg
