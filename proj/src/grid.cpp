#include "radosc/grid.hpp"

#include <cmath>

#include "radosc/errors.hpp"

namespace radosc {

FrequencyGrid make_log_grid(double lo, double hi, std::size_t n) {
  if (!(lo > 0.0) || !(hi > lo) || n < 2 || !std::isfinite(lo) || !std::isfinite(hi))
    fail(ErrorCode::BadConfig, "log grid requires 0 < lo < hi and n >= 2");
  FrequencyGrid g;
  g.spacing = GridSpacing::logarithmic;
  g.points.resize(n);
  const double llo = std::log(lo), lhi = std::log(hi);
  for (std::size_t i = 0; i < n; ++i)
    g.points[i] = std::exp(llo + (lhi - llo) * double(i) / double(n - 1));
  g.points.front() = lo;
  g.points.back() = hi;
  return g;
}

FrequencyGrid make_linear_grid(double lo, double hi, std::size_t n) {
  if (!(hi > lo) || n < 2 || !std::isfinite(lo) || !std::isfinite(hi))
    fail(ErrorCode::BadConfig, "linear grid requires lo < hi and n >= 2");
  FrequencyGrid g;
  g.spacing = GridSpacing::linear;
  g.points.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    g.points[i] = lo + (hi - lo) * double(i) / double(n - 1);
  g.points.back() = hi;
  return g;
}

void validate_grid(const FrequencyGrid& g) {
  if (g.points.empty()) fail(ErrorCode::BadConfig, "empty frequency grid");
  double prev = -std::numeric_limits<double>::infinity();
  for (double w : g.points) {
    if (!std::isfinite(w)) fail(ErrorCode::NonFiniteInput, "non-finite grid point");
    if (!(w > prev)) fail(ErrorCode::BadConfig, "grid not strictly increasing");
    prev = w;
  }
  if (g.spacing == GridSpacing::logarithmic && g.points.front() <= 0.0)
    fail(ErrorCode::BadConfig, "log grid must exclude omega <= 0");
}

} // namespace radosc
