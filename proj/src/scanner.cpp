#include "iseg/scanner.hpp"

#include <algorithm>
#include <cmath>

#include "iseg/error.hpp"

namespace iseg {
namespace {

// ceil() that ignores representation noise such as 1.2 * 10 = 12.000000000000002.
std::size_t ceil_scale(double v) {
  return static_cast<std::size_t>(std::ceil(v - 1e-9 * v));
}

}  // namespace

void ScanConfig::validate() const {
  if (w_min < 1) throw ValidationError("w_min must be at least 1");
  if (w_max < w_min) throw ValidationError("w_max must be at least w_min");
  if (!(rho > 1.0) || !std::isfinite(rho)) throw ValidationError("rho must be greater than 1");
  if (!(p_s > 0.0 && p_s <= 1.0)) throw ValidationError("p_s must lie in (0, 1]");
  if (!(alpha > 0.0 && alpha < 1.0)) throw ValidationError("alpha must lie in (0, 1)");
  if (p_b && !(*p_b >= 0.0)) throw ValidationError("p_b must be non-negative");
  if (k_refine < 2) throw ValidationError("k_refine must be at least 2");
  if (!std::isfinite(background)) throw ValidationError("background must be finite");
  if (stride_divisor < 1) throw ValidationError("stride divisor must be at least 1");
}

ScanConfig ScanConfig::clamped_to(std::size_t n, std::vector<std::string>* warnings) const {
  ScanConfig out = *this;
  if (out.w_max > n) {
    if (warnings) {
      warnings->push_back("w_max " + std::to_string(out.w_max) + " exceeds profile length " +
                          std::to_string(n) + "; clamped");
    }
    out.w_max = n;
  }
  if (out.w_min > out.w_max) {
    if (warnings) {
      warnings->push_back("w_min " + std::to_string(out.w_min) + " exceeds profile length " +
                          std::to_string(n) + "; clamped");
    }
    out.w_min = out.w_max;
  }
  return out;
}

std::vector<std::size_t> window_lengths(const ScanConfig& cfg) {
  std::vector<std::size_t> out;
  if (cfg.w_min < 1 || cfg.w_max < cfg.w_min) return out;
  if (cfg.exhaustive) {
    for (std::size_t w = cfg.w_min; w <= cfg.w_max; ++w) out.push_back(w);
    return out;
  }
  const double base = static_cast<double>(cfg.w_min);
  for (int i = 0;; ++i) {
    const std::size_t w = ceil_scale(base * std::pow(cfg.rho, i));
    if (w > cfg.w_max) break;
    if (out.empty() || out.back() != w) out.push_back(w);
  }
  return out;
}

std::vector<Candidate> scan(const PrefixSums& sums, const NoiseModel& noise,
                            const ScanConfig& cfg, ScanCounters* counters) {
  const std::size_t n = sums.size();
  const double log_ps = std::log(cfg.p_s);
  // Windows with |z| below this cannot reach p_s; skip the tail evaluation.
  const double z_cut = z_threshold(cfg.p_s, cfg.sides) - 1e-9;

  ScanCounters local;
  local.prefix = sums.build_additions();
  std::vector<Candidate> out;

  auto evaluate = [&](std::size_t l, std::size_t r) {
    ++local.window;
    ++local.windows_evaluated;
    const double s = sums.sum(l, r);
    const double z = z_statistic(s, r - l, noise);
    const double screened = cfg.sides == Sides::two ? std::abs(z) : z;
    if (screened < z_cut) return;
    const double lp = log_p_value(z, cfg.sides);
    if (lp > log_ps) return;
    out.push_back(Candidate{l, r, s / static_cast<double>(r - l), z, lp, kScanned});
  };

  for (std::size_t w : window_lengths(cfg)) {
    if (w > n) break;
    const std::size_t stride = window_stride(w, cfg);
    const std::size_t last = n - w;
    for (std::size_t l = 0; l <= last; l += stride) evaluate(l, l + w);
    if (last % stride != 0) evaluate(last, n);
  }

  std::sort(out.begin(), out.end(), RankLess{});
  if (counters) *counters = local;
  return out;
}

OpCounts predicted_op_counts(std::size_t n, const ScanConfig& cfg) {
  const double big_n = static_cast<double>(n);
  const double w_min = static_cast<double>(cfg.w_min);
  const double w_max = static_cast<double>(cfg.w_max);
  double brute = 0.0;
  double memo = big_n;
  for (int i = 0;; ++i) {
    const double w = std::pow(cfg.rho, i) * w_min;
    if (w > w_max * (1.0 + 1e-12)) break;
    brute += (big_n - w) * w;
    memo += big_n - w;
  }
  return OpCounts{static_cast<std::uint64_t>(std::llround(brute)),
                  static_cast<std::uint64_t>(std::llround(memo))};
}

}  // namespace iseg
