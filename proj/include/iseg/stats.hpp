#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "iseg/profile.hpp"

namespace iseg {

enum class Sides { two, one };

// Running sums over a profile: sum of any [l, r) in O(1).
class PrefixSums {
 public:
  explicit PrefixSums(std::span<const double> values);
  explicit PrefixSums(const Profile& profile) : PrefixSums(profile.values) {}

  std::size_t size() const noexcept { return sums_.size() - 1; }

  double sum(std::size_t l, std::size_t r) const noexcept { return sums_[r] - sums_[l]; }
  double sum_squares(std::size_t l, std::size_t r) const noexcept {
    return squares_[r] - squares_[l];
  }
  double mean(std::size_t l, std::size_t r) const noexcept {
    return sum(l, r) / static_cast<double>(r - l);
  }
  // Unbiased sample variance; zero for single points.
  double variance(std::size_t l, std::size_t r) const noexcept;

  const std::vector<double>& cumulative() const noexcept { return sums_; }

  // Additions performed while building the two running-sum arrays.
  std::size_t build_additions() const noexcept { return 2 * size(); }

 private:
  std::vector<double> sums_;
  std::vector<double> squares_;
};

struct NoiseModel {
  double sigma = 1.0;
  double background = 0.0;
};

inline constexpr double kMadConsistency = 1.4826;

double median(std::vector<double> values);

// sigma = 1.4826 * MAD. Throws DegenerateScaleError when MAD is zero and
// ValidationError for fewer than two values.
NoiseModel estimate_sigma_mad(std::span<const double> values, double background = 0.0);
inline NoiseModel estimate_sigma_mad(const Profile& profile, double background = 0.0) {
  return estimate_sigma_mad(profile.values, background);
}

// (mean - b) * sqrt(n) / sigma. Valid for n = 1.
double z_statistic(double sum, std::size_t n, const NoiseModel& noise);

// log(erfc(x)) without underflow for large x.
double log_erfc(double x);

// Natural log of the Gaussian tail p-value. Two-sided: 2(1 - Phi(|z|)).
// One-sided tests the upper tail: 1 - Phi(z).
double log_p_value(double z, Sides sides = Sides::two);

// exp(log_p_value). Underflows to 0 for |z| beyond roughly 38.
double p_value(double z, Sides sides = Sides::two);

// Smallest |z| whose two-sided (or upper one-sided) p-value is <= p. For
// p >= 1 every z qualifies: 0 two-sided, -infinity one-sided.
double z_threshold(double p, Sides sides = Sides::two);

struct SegmentStats {
  double mean = 0.0;
  double z = 0.0;
  double log_p = 0.0;
};

SegmentStats segment_stats(const PrefixSums& sums, std::size_t l, std::size_t r,
                           const NoiseModel& noise, Sides sides);

}  // namespace iseg
