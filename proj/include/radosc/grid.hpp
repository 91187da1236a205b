#pragma once
#include <vector>

namespace radosc {

enum class GridSpacing { linear, logarithmic, custom };

/// Ordered real angular-frequency sample points [rad/s].
struct FrequencyGrid {
  std::vector<double> points;
  GridSpacing spacing = GridSpacing::custom;

  std::size_t size() const { return points.size(); }
  double front() const { return points.front(); }
  double back() const { return points.back(); }
};

/// n points, lo..hi inclusive, geometric spacing.  Requires 0 < lo < hi.
FrequencyGrid make_log_grid(double lo, double hi, std::size_t n);

/// n points, lo..hi inclusive, uniform spacing.  Requires lo < hi, n >= 2.
FrequencyGrid make_linear_grid(double lo, double hi, std::size_t n);

/// Strictly increasing, finite, nonempty; log grids must exclude zero.
void validate_grid(const FrequencyGrid& g);

} // namespace radosc
