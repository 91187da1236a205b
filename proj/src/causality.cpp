#include "radosc/causality.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "radosc/detail/numerics.hpp"
#include "radosc/errors.hpp"

namespace radosc {

using namespace std::complex_literals;
using std::numbers::pi;

namespace {

// Polynomial with coefficients lowest-first, evaluated by Horner.
cdouble poly_eval(std::span<const cdouble> c, cdouble x) {
  cdouble s = 0;
  for (std::size_t k = c.size(); k-- > 0;) s = s * x + c[k];
  return s;
}

cdouble poly_eval_deriv(std::span<const cdouble> c, cdouble x) {
  cdouble s = 0;
  for (std::size_t k = c.size(); k-- > 1;) s = s * x + double(k) * c[k];
  return s;
}

double poly_scale(std::span<const cdouble> c, cdouble x) {
  double s = 0, xa = 1;
  for (std::size_t k = 0; k < c.size(); ++k) {
    s += std::abs(c[k]) * xa;
    xa *= std::abs(x);
  }
  return s;
}

cdouble newton_polish(std::span<const cdouble> c, cdouble x) {
  for (int it = 0; it < 50; ++it) {
    const cdouble p = poly_eval(c, x);
    if (std::abs(p) <= 1e-15 * poly_scale(c, x)) break;
    const cdouble dp = poly_eval_deriv(c, x);
    if (dp == 0.0) break;
    const cdouble step = p / dp;
    x -= step;
    if (std::abs(step) <= 1e-17 * std::abs(x)) break;
  }
  return x;
}

std::vector<cdouble> companion_eigenvalues(const std::vector<cdouble>& c) {
  const std::size_t d = c.size() - 1;
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(d, d);
  for (std::size_t i = 1; i < d; ++i) comp(i, i - 1) = 1.0;
  for (std::size_t i = 0; i < d; ++i) comp(i, d - 1) = -c[i] / c[d];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp);
  std::vector<cdouble> ev(d);
  for (std::size_t i = 0; i < d; ++i) ev[i] = es.eigenvalues()(i);
  return ev;
}

/// Roots of sum c_k x^k: companion-matrix eigenvalues polished by Newton.
/// When the roots straddle many orders of magnitude (tiny resonance pair
/// against an O(1) runaway/cutoff root), one companion solve loses the small
/// pair entirely; a second solve of the rescaled polynomial x = scale2 * x'
/// recovers them, and the merged candidates are ranked by backward error.
std::vector<cdouble> poly_roots(std::vector<cdouble> c, double scale2 = 0.0) {
  while (c.size() > 1 && c.back() == 0.0) c.pop_back();

  // exact zero roots deflate structurally (c0 = c1 = ... = 0); the companion
  // solver would otherwise split a multiple zero by ~sqrt(eps)
  std::vector<cdouble> zero_roots;
  while (c.size() > 1 && c.front() == 0.0) {
    zero_roots.push_back(0.0);
    c.erase(c.begin());
  }

  const std::size_t d = c.size() - 1;
  if (d == 0) {
    std::sort(zero_roots.begin(), zero_roots.end(),
              [](cdouble a, cdouble b) { return a.imag() < b.imag(); });
    return zero_roots;
  }

  std::vector<cdouble> candidates;
  for (cdouble x : companion_eigenvalues(c))
    candidates.push_back(newton_polish(c, x));

  if (scale2 > 0.0) {
    std::vector<cdouble> c2(c.size());
    double s = 1.0;
    for (std::size_t k = 0; k < c.size(); ++k, s *= scale2) c2[k] = c[k] * s;
    for (cdouble x2 : companion_eigenvalues(c2))
      candidates.push_back(newton_polish(c, x2 * scale2));
  }

  auto backward = [&](cdouble x) {
    // scale vanishes only at x = 0 with c0 = 0, i.e. an exact root
    const double s = poly_scale(c, x);
    const double v = std::abs(poly_eval(c, x));
    return s > 0 ? v / s : (v > 0 ? std::numeric_limits<double>::infinity() : 0.0);
  };
  std::sort(candidates.begin(), candidates.end(),
            [&](cdouble a, cdouble b) { return backward(a) < backward(b); });

  std::vector<cdouble> roots;
  std::vector<std::size_t> taken;
  for (std::size_t i = 0; i < candidates.size() && roots.size() < d; ++i) {
    bool dup = false;
    for (cdouble r : roots)
      dup = dup ||
            std::abs(candidates[i] - r) <=
                1e-6 * (std::abs(candidates[i]) + std::abs(r));
    if (!dup) {
      roots.push_back(candidates[i]);
      taken.push_back(i);
    }
  }
  // multiple roots legitimately collide with the duplicate filter; fill from
  // the remaining candidates in rank order
  for (std::size_t i = 0; roots.size() < d && i < candidates.size(); ++i) {
    bool used = false;
    for (std::size_t t : taken) used = used || t == i;
    if (!used) {
      roots.push_back(candidates[i]);
      taken.push_back(i);
    }
  }

  roots.insert(roots.end(), zero_roots.begin(), zero_roots.end());
  std::sort(roots.begin(), roots.end(), [](cdouble a, cdouble b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return roots;
}

HalfPlane classify(cdouble loc) {
  if (std::abs(loc.imag()) < 1e-6 * std::abs(loc)) return HalfPlane::real_axis;
  return loc.imag() > 0 ? HalfPlane::upper : HalfPlane::lower;
}

} // namespace

PoleSet find_poles(const ResponseModel& model) {
  const auto& p = model.params();
  const double tau = p.tau_e;
  const double w0t = p.resonance_omega0 * tau;

  // Denominator in the scaled variable x = omega * tau_e (conditions the
  // coefficients: physical roots span ~omega0 up to ~1/tau_e).
  std::vector<cdouble> coeffs;
  std::optional<cdouble> numerator_zero;
  enum class Residue { ald, fo, general } res_kind;

  switch (model.kind()) {
    case ModelKind::ald:
      // tau^2 * (w0^2 - w^2 - i tau w^3) = w0t^2 - x^2 - i x^3
      coeffs = {cdouble(w0t * w0t), 0.0, -1.0, -1.0i};
      res_kind = Residue::ald;
      break;
    case ModelKind::fo_critical: {
      const double gt = w0t * w0t; // gamma * tau = (w0 tau)^2
      coeffs = {cdouble(w0t * w0t), cdouble(0, -gt), -1.0};
      numerator_zero = cdouble(0.0, -1.0 / tau);
      res_kind = Residue::fo;
      break;
    }
    case ModelKind::general_kernel: {
      if (model.form_factor().kind() != FormFactorKind::lorentzian_cutoff)
        fail(ErrorCode::NonRationalModel,
             "find_poles: only rational (Lorentzian-cutoff) kernels have poles");
      const double Wt = model.form_factor().cutoff_omega() * tau;
      const double mr = p.bare_mass / p.observed_mass;
      // tau^3/M * P(omega):  i w0t^2 Wt + w0t^2 x - i Wt x^2 - (m/M) x^3
      coeffs = {cdouble(0, w0t * w0t * Wt), cdouble(w0t * w0t),
                cdouble(0, -Wt), cdouble(-mr)};
      numerator_zero = cdouble(0.0, -model.form_factor().cutoff_omega());
      res_kind = Residue::general;
      break;
    }
    default:
      fail(ErrorCode::NonRationalModel, "find_poles: unsupported model");
  }

  PoleSet ps;
  ps.numerator_zero = numerator_zero;
  const double M = p.observed_mass;
  const double w0 = p.resonance_omega0;
  const double gamma = w0 * w0 * tau;

  // second companion solve at the resonance scale when the root magnitudes
  // split far apart (the tiny +-omega0 pair next to the 1/tau_e root)
  const double scale2 = (w0 > 0 && w0t < 1e-2) ? w0t : 0.0;

  for (cdouble x : poly_roots(std::move(coeffs), scale2)) {
    Pole pole;
    pole.location = x / tau;
    const cdouble w = pole.location;
    switch (res_kind) {
      case Residue::ald:
        // alpha = (1/M)/D, D = w0^2 - w^2 - i tau w^3
        pole.residue = (1.0 / M) / (-2.0 * w - 3.0i * tau * w * w);
        break;
      case Residue::fo:
        // alpha = (1 - i w tau)/(M D), D = w0^2 - w^2 - i gamma w
        pole.residue = (1.0 - 1.0i * w * tau) / (M * (-2.0 * w - 1.0i * gamma));
        break;
      case Residue::general: {
        // alpha = (w + i W)/P, P' = -3 m w^2 - 2 i M W w + K
        const double W = model.form_factor().cutoff_omega();
        const cdouble dP = -3.0 * p.bare_mass * w * w -
                           2.0i * M * W * w + p.spring_k;
        pole.residue = (w + 1.0i * W) / dP;
        break;
      }
    }
    pole.half_plane = classify(pole.location);
    ps.poles.push_back(pole);
  }

  // Causality is the strict sign condition; the real_axis flag is a separate
  // review marker for |Im| tiny relative to |location|.
  ps.causal = std::all_of(ps.poles.begin(), ps.poles.end(),
                          [](const Pole& q) { return q.location.imag() < 0.0; });
  return ps;
}

double crossing_audit_fn(const std::function<cdouble(cdouble)>& alpha,
                         const FrequencyGrid& grid) {
  double worst = 0;
  for (double w : grid.points) {
    const cdouble ap = alpha(cdouble(w, 0.0));
    const cdouble am = alpha(cdouble(-w, 0.0));
    worst = std::max(worst, std::abs(am - std::conj(ap)) / std::abs(ap));
  }
  return worst;
}

double crossing_audit(const ResponseModel& model, const FrequencyGrid& grid) {
  return crossing_audit_fn([&](cdouble z) { return model.alpha(z); }, grid);
}

FrequencyGrid make_kk_grid(const PhysicalParams& p, double lo, double hi,
                           int points_per_decade) {
  if (!(lo > 0) || !(hi > lo))
    fail(ErrorCode::BadConfig, "make_kk_grid: need 0 < lo < hi");
  const int n = int(std::ceil(std::log10(hi / lo) * points_per_decade)) + 1;
  FrequencyGrid base = make_log_grid(lo, hi, std::size_t(n));

  const double w0 = p.resonance_omega0;
  if (w0 > lo && w0 < hi) {
    // Graded two-sided refinement across the resonance: Im alpha is a
    // Lorentzian of half-width gamma/2, invisible to any log grid when
    // gamma/w0 ~ 1e-8.  Spacing grows geometrically away from the peak
    // until it matches the base grid.
    const double gamma = w0 * w0 * p.tau_e;
    const double d0 = gamma / 60.0;
    const double dmax = 0.1 * w0;
    std::vector<double> extra{w0};
    for (double d = d0; d < dmax; d *= 1.03) {
      if (w0 - d > lo) extra.push_back(w0 - d);
      if (w0 + d < hi) extra.push_back(w0 + d);
    }
    base.points.insert(base.points.end(), extra.begin(), extra.end());
    std::sort(base.points.begin(), base.points.end());
    base.points.erase(std::unique(base.points.begin(), base.points.end()),
                      base.points.end());
    base.spacing = GridSpacing::custom;
  }
  return base;
}

namespace {

using AlphaFn = std::function<cdouble(double)>;

struct KKTables {
  std::vector<double> x;  // grid
  std::vector<double> im; // Im alpha on grid
  // fitted power-law tails  Im ~ C w^s
  double c_hi = 0, s_hi = 0;
  double c_lo = 0, s_lo = 0;
};

KKTables kk_tables(const AlphaFn& alpha, const FrequencyGrid& grid) {
  KKTables t;
  t.x = grid.points;
  t.im.resize(t.x.size());
  for (std::size_t i = 0; i < t.x.size(); ++i)
    t.im[i] = alpha(t.x[i]).imag();

  auto fit_tail = [&](double from, double to, double& c, double& s) {
    std::vector<double> lx, ly;
    double sign = 0;
    for (std::size_t i = 0; i < t.x.size(); ++i) {
      if (t.x[i] >= from && t.x[i] <= to && t.im[i] != 0.0) {
        lx.push_back(std::log(t.x[i]));
        ly.push_back(std::log(std::abs(t.im[i])));
        sign += t.im[i] > 0 ? 1.0 : -1.0;
      }
    }
    if (lx.size() < 4) fail(ErrorCode::InsufficientResolution, "kk: tail fit failed");
    const auto f = detail::fit_line(lx, ly);
    s = f.slope;
    c = std::copysign(std::exp(f.intercept), sign);
  };
  fit_tail(t.x.back() / 10.0, t.x.back(), t.c_hi, t.s_hi);
  fit_tail(t.x.front(), t.x.front() * 10.0, t.c_lo, t.s_lo);
  return t;
}

double kk_eval(const AlphaFn& alpha, const KKTables& t, double w) {
  const double a = t.x.front(), b = t.x.back();

  double g_at_w = 0, dg_at_w = 0;
  if (w > 0) {
    g_at_w = w * alpha(w).imag();
    const double h = 1e-7 * w;
    dg_at_w =
        ((w + h) * alpha(w + h).imag() - (w - h) * alpha(w - h).imag()) /
        (2 * h);
  }
  std::vector<double> g(t.x.size());
  for (std::size_t i = 0; i < t.x.size(); ++i) g[i] = t.x[i] * t.im[i];
  double pv = detail::pv_dispersion_grid(t.x, g, w, g_at_w, dg_at_w);

  // upper tail: Im ~ c_hi w'^{s_hi}  (s_hi < 0); expand 1/(w'^2 - w^2)
  const double p_hi = -t.s_hi;
  for (int k = 0; k < 6; ++k) {
    const double term = t.c_hi * std::pow(w, 2 * k) *
                        std::pow(b, -p_hi - 2 * k) / (p_hi + 2 * k);
    pv += term;
    if (w == 0.0) break;
  }
  // lower tail: Im ~ c_lo w'^{s_lo}  (s_lo ~ +3)
  if (w > 0) {
    for (int k = 0; k < 6; ++k)
      pv -= t.c_lo * std::pow(a, t.s_lo + 2 + 2 * k) /
            ((t.s_lo + 2 + 2 * k) * std::pow(w, 2 + 2 * k));
  } else {
    pv += t.c_lo * std::pow(a, t.s_lo) / t.s_lo;
  }
  return (2.0 / pi) * pv;
}

} // namespace

namespace {

KKReport kk_run(const AlphaFn& alpha, const FrequencyGrid& grid, KKBand band,
                std::size_t eval_points) {
  validate_grid(grid);
  if (!(band.lo > 0) || !(band.hi > band.lo))
    fail(ErrorCode::BadConfig, "kk_reconstruct: bad band");
  if (grid.front() > band.lo / 10.0 || grid.back() < band.hi * 10.0)
    fail(ErrorCode::BandNotCovered,
         "kk_reconstruct: grid must bracket the band by >= 1 decade each side");
  const double decades = std::log10(grid.back() / grid.front());
  // density judged by the widest logarithmic gap, so local refinement
  // cannot mask a sparse base grid
  double max_gap = 0;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i)
    max_gap = std::max(max_gap,
                       std::log(grid.points[i + 1] / grid.points[i]));
  if (decades < 5.0 || std::log(10.0) / max_gap < 200.0)
    fail(ErrorCode::InsufficientResolution,
         "kk_reconstruct: need >= 5 decades at >= 200 points/decade");
  if (eval_points < 2) eval_points = 2;
  if (eval_points % 2) ++eval_points; // even count: never lands on resonance

  KKReport rep;
  rep.grid = grid;
  rep.band = band;
  const auto t = kk_tables(alpha, grid);

  for (std::size_t i = 0; i < eval_points; ++i) {
    const double u = double(i) / double(eval_points - 1);
    const double w = band.lo * std::pow(band.hi / band.lo, u);
    const double rec = kk_eval(alpha, t, w);
    const cdouble direct = alpha(w);
    rep.eval_omega.push_back(w);
    rep.re_direct.push_back(direct.real());
    rep.re_reconstructed.push_back(rec);
    rep.rel_err.push_back(std::abs(rec - direct.real()) / std::abs(direct));
  }
  rep.max_relative_error =
      *std::max_element(rep.rel_err.begin(), rep.rel_err.end());
  return rep;
}

} // namespace

double kk_reconstruct_at(const ResponseModel& model, const FrequencyGrid& grid,
                         double w) {
  validate_grid(grid);
  if (w < 0) fail(ErrorCode::BadConfig, "kk_reconstruct_at: w must be >= 0");
  if (w > 0 && (w <= grid.front() || w >= grid.back()))
    fail(ErrorCode::BandNotCovered, "kk_reconstruct_at: w outside the grid");
  const AlphaFn alpha = [&](double x) { return model.alpha(x); };
  const auto t = kk_tables(alpha, grid);
  return kk_eval(alpha, t, w);
}

KKReport kk_reconstruct(const ResponseModel& model, const FrequencyGrid& grid,
                        KKBand band, std::size_t eval_points) {
  return kk_run([&](double x) { return model.alpha(x); }, grid, band,
                eval_points);
}

KKReport kk_reconstruct_fn(const std::function<cdouble(double)>& alpha,
                           const FrequencyGrid& grid, KKBand band,
                           std::size_t eval_points) {
  return kk_run(alpha, grid, band, eval_points);
}

} // namespace radosc
