#include "radosc/detail/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <thread>

namespace radosc::detail {

double trapezoid(std::span<const double> x, std::span<const double> f) {
  double s = 0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i)
    s += 0.5 * (x[i + 1] - x[i]) * (f[i] + f[i + 1]);
  return s;
}

GaussLegendre gauss_legendre(int n) {
  GaussLegendre gl;
  gl.nodes.resize(n);
  gl.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Chebyshev-like initial guess, then Newton on P_n
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    gl.nodes[i] = -x;
    gl.nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    gl.weights[i] = w;
    gl.weights[n - 1 - i] = w;
  }
  return gl;
}

void exp_moments(double r, double h, double m[4]) {
  const double rh = r * h;
  if (rh < 0.5) {
    // series: m_j = h^{j+1} sum_n (-rh)^n / (n! (j+n+1))
    for (int j = 0; j < 4; ++j) {
      double term = 1.0, sum = 1.0 / (j + 1);
      for (int n = 1; n < 30; ++n) {
        term *= -rh / n;
        const double add = term / (j + n + 1);
        sum += add;
        if (std::abs(add) < 1e-18 * std::abs(sum)) break;
      }
      m[j] = std::pow(h, j + 1) * sum;
    }
    return;
  }
  const double e = (rh > 700.0) ? 0.0 : std::exp(-rh);
  m[0] = (1.0 - e) / r;
  double hj = 1.0;
  for (int j = 1; j < 4; ++j) {
    hj *= h;
    m[j] = (j * m[j - 1] - hj * e) / r;
  }
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.r2 = (syy > 0) ? (sxy * sxy) / (sxx * syy) : 1.0;
  return f;
}

double pv_dispersion_grid(std::span<const double> x, std::span<const double> g,
                          double w, double g_at_w, double dg_at_w) {
  const double a = x.front(), b = x.back();
  double s = 0;
  auto integrand = [&](std::size_t i) {
    const double xi = x[i];
    if (w > 0.0 && xi == w) return (dg_at_w) / (2.0 * w); // removable limit
    if (w == 0.0) return g[i] / (xi * xi);
    return (g[i] - g_at_w) / ((xi - w) * (xi + w));
  };
  double prev = integrand(0);
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const double cur = integrand(i + 1);
    s += 0.5 * (x[i + 1] - x[i]) * (prev + cur);
    prev = cur;
  }
  if (w > 0.0 && w > a && w < b) {
    // P int_a^b dx'/(x'^2 - w^2) = (1/2w) ln[ (b-w)(w+a) / ((b+w)(w-a)) ]
    s += (g_at_w / (2.0 * w)) *
         std::log(((b - w) * (w + a)) / ((b + w) * (w - a)));
  }
  return s;
}

std::vector<double> sampled_derivative(std::span<const double> v, double dt) {
  const std::size_t n = v.size();
  std::vector<double> d(n);
  const double inv = 1.0 / (12.0 * dt);
  // one-sided 4th-order stencils at the edges
  d[0] = (-25 * v[0] + 48 * v[1] - 36 * v[2] + 16 * v[3] - 3 * v[4]) * inv;
  d[1] = (-3 * v[0] - 10 * v[1] + 18 * v[2] - 6 * v[3] + v[4]) * inv;
  for (std::size_t i = 2; i + 2 < n; ++i)
    d[i] = (v[i - 2] - 8 * v[i - 1] + 8 * v[i + 1] - v[i + 2]) * inv;
  d[n - 2] = (3 * v[n - 1] + 10 * v[n - 2] - 18 * v[n - 3] + 6 * v[n - 4] -
              v[n - 5]) *
             inv;
  d[n - 1] = (25 * v[n - 1] - 48 * v[n - 2] + 36 * v[n - 3] - 16 * v[n - 4] +
              3 * v[n - 5]) *
             inv;
  return d;
}

std::string fnv1a_hex(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string fmt_g17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void parallel_for(std::size_t n, unsigned nthreads,
                  const std::function<void(std::size_t)>& fn) {
  if (nthreads <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  nthreads = std::min<std::size_t>(nthreads, n);
  std::vector<std::thread> pool;
  pool.reserve(nthreads);
  for (unsigned t = 0; t < nthreads; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < n; i += nthreads) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

std::complex<double> phi1(std::complex<double> z) {
  if (std::abs(z) < 1e-4)
    return 1.0 + z / 2.0 + z * z / 6.0 + z * z * z / 24.0;
  return (std::exp(z) - 1.0) / z;
}

std::complex<double> exp_divided_difference(std::complex<double> a,
                                            std::complex<double> b) {
  const std::complex<double> d = a - b;
  if (std::abs(d) < 1e-6 * (std::abs(a) + std::abs(b) + 1.0)) {
    // exp(b) * (exp(d) - 1)/d expanded about d = 0
    return std::exp(b) * (1.0 + d / 2.0 + d * d / 6.0);
  }
  return (std::exp(a) - std::exp(b)) / d;
}

} // namespace radosc::detail
