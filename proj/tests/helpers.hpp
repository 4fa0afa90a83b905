#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "iseg/profile.hpp"
#include "iseg/segment.hpp"
#include "iseg/stats.hpp"

namespace iseg::testing {

inline std::vector<double> gaussian_values(std::size_t n, std::uint64_t seed, double mean = 0.0,
                                           double sd = 1.0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> d(mean, sd);
  std::vector<double> v(n);
  for (double& x : v) x = d(rng);
  return v;
}

// Noise plus a few random shifted blocks.
inline std::vector<double> random_profile(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<double> v = gaussian_values(n, seed);
  std::uniform_int_distribution<std::size_t> blocks(0, 4);
  std::uniform_real_distribution<double> amp(-4.0, 4.0);
  const std::size_t k = blocks(rng);
  for (std::size_t b = 0; b < k && n > 1; ++b) {
    std::uniform_int_distribution<std::size_t> at(0, n - 1);
    const std::size_t l = at(rng);
    std::uniform_int_distribution<std::size_t> len(1, std::max<std::size_t>(1, (n - l) / 3));
    const std::size_t r = std::min(n, l + len(rng));
    const double a = amp(rng);
    for (std::size_t i = l; i < r; ++i) v[i] += a;
  }
  return v;
}

inline Profile make_profile(std::vector<double> values) {
  Profile p;
  p.values = std::move(values);
  return p;
}

// Direct O(n) recomputation of a segment's statistics.
struct DirectStats {
  double mean;
  double z;
  double log_p;
};

inline DirectStats direct_stats(const std::vector<double>& v, std::size_t l, std::size_t r,
                                const NoiseModel& noise, Sides sides) {
  double s = 0.0;
  for (std::size_t i = l; i < r; ++i) s += v[i];
  const double n = static_cast<double>(r - l);
  const double mean = s / n;
  const double z = (mean - noise.background) * std::sqrt(n) / noise.sigma;
  return DirectStats{mean, z, log_p_value(z, sides)};
}

inline bool rel_close(double a, double b, double tol) {
  const double scale = std::max({1.0, std::abs(a), std::abs(b)});
  return std::abs(a - b) <= tol * scale;
}

// Quadratic step-up: k* = max k with #{p_j <= alpha k / m} >= k.
inline std::vector<bool> bh_reference(const std::vector<double>& p, double alpha, std::size_t family = 0) {
  const std::size_t m = family ? family : p.size();
  std::size_t best = 0;
  for (std::size_t k = 1; k <= p.size(); ++k) {
    const double level = alpha * static_cast<double>(k) / static_cast<double>(m);
    std::size_t count = 0;
    for (double x : p) count += x <= level;
    if (count >= k) best = k;
  }
  std::vector<bool> out(p.size(), false);
  if (best == 0) return out;
  const double level = alpha * static_cast<double>(best) / static_cast<double>(m);
  for (std::size_t i = 0; i < p.size(); ++i) out[i] = p[i] <= level;
  return out;
}

}  // namespace iseg::testing
