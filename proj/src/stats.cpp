#include "iseg/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "iseg/error.hpp"

namespace iseg {

PrefixSums::PrefixSums(std::span<const double> values)
    : sums_(values.size() + 1, 0.0), squares_(values.size() + 1, 0.0) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    sums_[i + 1] = sums_[i] + values[i];
    squares_[i + 1] = squares_[i] + values[i] * values[i];
  }
}

double PrefixSums::variance(std::size_t l, std::size_t r) const noexcept {
  const std::size_t n = r - l;
  if (n < 2) return 0.0;
  const double s = sum(l, r);
  const double ss = sum_squares(l, r) - s * s / static_cast<double>(n);
  return std::max(0.0, ss / static_cast<double>(n - 1));
}

double median(std::vector<double> values) {
  if (values.empty()) throw ValidationError("median of an empty sequence");
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + mid, values.end());
  const double upper = values[mid];
  if (values.size() % 2 == 1) return upper;
  const double lower = *std::max_element(values.begin(), values.begin() + mid);
  return 0.5 * (lower + upper);
}

NoiseModel estimate_sigma_mad(std::span<const double> values, double background) {
  if (values.size() < 2) {
    throw ValidationError("noise estimation needs at least two values; supply --sigma");
  }
  const double center = median(std::vector<double>(values.begin(), values.end()));
  std::vector<double> deviations(values.size());
  std::transform(values.begin(), values.end(), deviations.begin(),
                 [center](double x) { return std::abs(x - center); });
  const double mad = median(std::move(deviations));
  if (!(mad > 0.0)) throw DegenerateScaleError();
  return NoiseModel{kMadConsistency * mad, background};
}

double z_statistic(double sum, std::size_t n, const NoiseModel& noise) {
  const double count = static_cast<double>(n);
  return (sum / count - noise.background) * std::sqrt(count) / noise.sigma;
}

double log_erfc(double x) {
  if (x < 25.0) return std::log(std::erfc(x));
  // Asymptotic expansion of erfc; at x >= 25 the truncation error is below 1e-12.
  const double inv2x2 = 1.0 / (2.0 * x * x);
  double term = 1.0;
  double series = 1.0;
  for (int k = 1; k <= 6; ++k) {
    term *= -static_cast<double>(2 * k - 1) * inv2x2;
    series += term;
  }
  return -x * x - std::log(x * std::sqrt(std::numbers::pi)) + std::log(series);
}

double log_p_value(double z, Sides sides) {
  if (sides == Sides::two) return log_erfc(std::abs(z) / std::numbers::sqrt2);
  // Rounding can push the lower tail just above log(1).
  return std::min(0.0, log_erfc(z / std::numbers::sqrt2) - std::numbers::ln2);
}

double p_value(double z, Sides sides) { return std::exp(log_p_value(z, sides)); }

double z_threshold(double p, Sides sides) {
  if (p >= 1.0) return sides == Sides::two ? 0.0 : -std::numeric_limits<double>::infinity();
  const double target = std::log(p);
  double lo = sides == Sides::two ? 0.0 : -40.0;
  double hi = 40.0;
  if (log_p_value(lo, sides) <= target) return lo;
  for (int i = 0; i < 200 && hi - lo > 1e-13; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (log_p_value(mid, sides) <= target) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

SegmentStats segment_stats(const PrefixSums& sums, std::size_t l, std::size_t r,
                           const NoiseModel& noise, Sides sides) {
  const double s = sums.sum(l, r);
  const std::size_t n = r - l;
  const double z = z_statistic(s, n, noise);
  return SegmentStats{s / static_cast<double>(n), z, log_p_value(z, sides)};
}

}  // namespace iseg
