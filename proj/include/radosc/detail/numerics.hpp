#pragma once
#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace radosc::detail {

// ---------------------------------------------------------------------------
// quadrature
// ---------------------------------------------------------------------------

/// Trapezoid rule on an arbitrary increasing abscissa.
double trapezoid(std::span<const double> x, std::span<const double> f);

struct GaussLegendre {
  std::vector<double> nodes;   // on (-1, 1)
  std::vector<double> weights;
};

/// Nodes/weights by Newton iteration on the Legendre polynomial.
GaussLegendre gauss_legendre(int n);

/// Moments m_j = int_0^h exp(-r u) u^j du for j = 0..3, numerically stable
/// for r*h from 0 up to overflow of exp (series below r*h = 0.5, recurrence
/// above).  Used for exact exponential-weighted integration of piecewise
/// cubics.
void exp_moments(double r, double h, double m[4]);

// ---------------------------------------------------------------------------
// fitting
// ---------------------------------------------------------------------------

struct LineFit {
  double slope = 0, intercept = 0, r2 = 0;
};

/// Least-squares straight line through (x_i, y_i).
LineFit fit_line(std::span<const double> x, std::span<const double> y);

// ---------------------------------------------------------------------------
// principal-value dispersion integral
// ---------------------------------------------------------------------------

/// P int_{x0}^{x1} g(x') / (x'^2 - w^2) dx' over tabulated g, for w inside
/// (or below) the grid.  Uses subtraction of g(w) (supplied by the caller,
/// exact model value) so the integrand is smooth across x' = w; the
/// subtracted log term is added back analytically.  For w == 0 the integrand
/// is g(x')/x'^2 and no subtraction is performed.
double pv_dispersion_grid(std::span<const double> x, std::span<const double> g,
                          double w, double g_at_w, double dg_at_w);

// ---------------------------------------------------------------------------
// misc
// ---------------------------------------------------------------------------

/// Derivatives of a uniformly sampled series by 5-point finite differences
/// (4th order, one-sided at the edges).  Requires n >= 5.
std::vector<double> sampled_derivative(std::span<const double> v, double dt);

/// FNV-1a 64-bit over a string, hex-encoded; used to stamp output files with
/// a configuration fingerprint.
std::string fnv1a_hex(std::string_view s);

/// printf("%.17g"): round-trip-exact formatting for doubles.
std::string fmt_g17(double v);

/// Run fn(i) for i in [0, n) on nthreads threads.  Deterministic only if the
/// work items are independent; callers that reduce must do so afterwards in
/// index order.
void parallel_for(std::size_t n, unsigned nthreads,
                  const std::function<void(std::size_t)>& fn);

/// (exp(z) - 1)/z with a series fallback near z = 0.
std::complex<double> phi1(std::complex<double> z);

/// (exp(a) - exp(b)) / (a - b), stable when a ~ b.
std::complex<double> exp_divided_difference(std::complex<double> a,
                                            std::complex<double> b);

} // namespace radosc::detail
