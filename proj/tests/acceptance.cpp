// Acceptance suite: one line per criterion, nonzero exit when any fails.
// Tolerances are pinned here, not configurable.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <numbers>
#include <random>
#include <vector>

#include "radosc/causality.hpp"
#include "radosc/detail/numerics.hpp"
#include "radosc/grid.hpp"
#include "radosc/response.hpp"
#include "radosc/scattering.hpp"
#include "radosc/timedomain.hpp"

using namespace radosc;
using namespace std::complex_literals;
using std::numbers::pi;

namespace {

int g_failures = 0;

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
  }
};

void report(int id, const char* name, bool pass, const std::string& detail) {
  std::printf("%s  [%2d] %-34s %s\n", pass ? "PASS" : "FAIL", id, name,
              detail.c_str());
  if (!pass) ++g_failures;
}

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

bool rel_ok(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::abs(b);
}

const PhysicalParams kP = preset_params("electron-cgs");

// --- 1 & 2: optical theorem and crossing on the shared 2000-point grid ----

void criterion_optical_and_crossing() {
  const auto grid = make_log_grid(1e12, 1e22, 2000);
  const auto fo = ResponseModel::fo(kP);
  const auto ald = ResponseModel::ald(kP);
  const auto lor = FormFactor::lorentzian(kP.cutoff_omega, kP.speed_of_light);
  const auto point = FormFactor::point();

  Timer t;
  double worst = 0;
  for (double w : grid.points) {
    const auto rf = optical_theorem_residual(kP, lor, fo, w);
    const auto ra = optical_theorem_residual(kP, point, ald, w);
    worst = std::max({worst, rf.residual_relative, rf.residual_identity,
                      ra.residual_relative, ra.residual_identity});
  }
  const double secs = t.seconds();
  report(1, "optical theorem identity", worst <= 1e-12 && secs < 1.0,
         fmt("max residual %.2e (<=1e-12), %.2fs (<1s)", worst, secs));

  const double cx_fo = crossing_audit(fo, grid);
  const double cx_ald = crossing_audit(ald, grid);
  const double cworst = std::max(cx_fo, cx_ald);
  report(2, "crossing relation", cworst <= 1e-15,
         fmt("max deviation %.2e (<=1e-15)", cworst));
}

// --- 3: pole split ---------------------------------------------------------

void criterion_poles() {
  Timer t;
  const auto fo = find_poles(ResponseModel::fo(kP));
  const auto ald = find_poles(ResponseModel::ald(kP));
  const double secs = t.seconds();

  const double gamma = kP.resonance_omega0 * kP.resonance_omega0 * kP.tau_e;
  bool ok = fo.causal && fo.poles.size() == 2;
  for (const auto& q : fo.poles) ok = ok && rel_ok(q.location.imag(), -gamma / 2.0, 1e-9);
  ok = ok && rel_ok(gamma, 3.7614156126e7, 1e-8);

  bool runaway_found = false;
  for (const auto& q : ald.poles)
    if (q.location.imag() > 0) {
      runaway_found = rel_ok(q.location.imag(), 1.0 / kP.tau_e, 1e-2) &&
                      rel_ok(q.location.imag(), 1.5958087641e23, 1e-2);
    }
  ok = ok && !ald.causal && runaway_found && secs < 0.1;
  report(3, "causality split (poles)", ok,
         fmt("FO Im=-gamma/2 exact to 1e-9, ALD runaway at +1/tau_e, %.3fs",
             secs));
}

// --- 4: dispersion reconstruction ------------------------------------------

void criterion_kk() {
  Timer t;
  const double w0 = kP.resonance_omega0;
  const auto grid = make_kk_grid(kP, 1e-3 * w0, 1e3 * w0, 300);
  const KKBand band{0.5 * w0, 2.0 * w0};

  const auto fo = kk_reconstruct(ResponseModel::fo(kP), grid, band);
  const auto ald = kk_reconstruct(ResponseModel::ald(kP), grid, band);

  // diagnostic at the cutoff scale, where the acausal pole is visible
  const double it = 1.0 / kP.tau_e;
  const auto high_grid = make_kk_grid(kP, 1e13, 20.0 * it, 300);
  const auto ald_high =
      kk_reconstruct(ResponseModel::ald(kP), high_grid, KKBand{0.1 * it, 2.0 * it});
  const double secs = t.seconds();

  const bool ok = fo.max_relative_error <= 1e-3 &&
                  std::isfinite(ald.max_relative_error) && secs < 30.0;
  report(4, "Kramers-Kronig reconstruction", ok,
         fmt("FO band err %.2e (<=1e-3); ALD diag: band %.2e, near-cutoff "
             "%.2f; %.1fs (<30s)",
             fo.max_relative_error, ald.max_relative_error,
             ald_high.max_relative_error, secs));
}

// --- 5: cross-section limits ------------------------------------------------

void criterion_cross_sections() {
  const auto ald = ResponseModel::ald(kP);
  const auto fo = ResponseModel::fo(kP);
  const auto point = FormFactor::point();
  const double w0 = kP.resonance_omega0;

  // Rayleigh slope on [1e-3, 1e-2] w0
  std::vector<double> lw, ls;
  for (double w = 1e-3 * w0; w <= 1.0001e-2 * w0; w *= std::pow(10.0, 0.05)) {
    lw.push_back(std::log(w));
    ls.push_back(std::log(sigma_total_integrated(kP, point, ald.alpha(w), w)));
  }
  const double slope = detail::fit_line(lw, ls).slope;

  // Thomson plateau at 1e19 rad/s
  const double sigma19 =
      sigma_total_integrated(kP, point, ald.alpha(1e19), 1e19);
  const double r0 = classical_electron_radius(kP);
  const double plateau = (8.0 * pi / 3.0) * r0 * r0;

  // index route at two number densities
  const double w = 0.01 * w0;
  const double direct = sigma_total_integrated(kP, point, fo.alpha(w), w);
  const double via18 = rayleigh_cross_section_via_index(kP, fo, w, 1e18);
  const double via20 = rayleigh_cross_section_via_index(kP, fo, w, 1e20);

  const bool ok = std::abs(slope - 4.0) <= 1e-3 &&
                  rel_ok(sigma19, plateau, 1e-5) &&
                  rel_ok(sigma19, 6.6525e-25, 1e-5) &&
                  rel_ok(via18, direct, 1e-6) && rel_ok(via20, direct, 1e-6) &&
                  rel_ok(via18, via20, 1e-12);
  report(5, "cross-section limits", ok,
         fmt("slope %.4f (4+-0.001); plateau %.6e vs 6.6525e-25; index route "
             "N-independent to %.1e",
             slope, sigma19, std::abs(via18 / via20 - 1.0)));
}

// --- 6: angular quadrature ---------------------------------------------------

void criterion_quadrature() {
  const auto fo = ResponseModel::fo(kP);
  const auto ald = ResponseModel::ald(kP);
  const auto lor = FormFactor::lorentzian(kP.cutoff_omega, kP.speed_of_light);
  const auto point = FormFactor::point();

  std::mt19937 rng(424242);
  std::uniform_real_distribution<double> u(12.0, 22.0);
  double worst = 0;
  for (int i = 0; i < 20; ++i) {
    const double w = std::pow(10.0, u(rng));
    const bool use_fo = i % 2 == 0;
    const auto& ff = use_fo ? lor : point;
    const cdouble a = (use_fo ? fo : ald).alpha(w);
    const double closed = sigma_total_integrated(kP, ff, a, w);
    const double quad = sigma_total_quadrature(kP, ff, a, w, 1e-9);
    worst = std::max(worst, std::abs(quad - closed) / closed);
  }
  report(6, "angular-quadrature oracle", worst <= 1e-9,
         fmt("max |quad/closed - 1| = %.2e (<=1e-9) at 20 random frequencies",
             worst));
}

// --- 7: time/frequency consistency -------------------------------------------

void criterion_steady_state() {
  Timer t;
  const double w0 = kP.resonance_omega0;
  double worst_amp = 0, worst_phase = 0;
  for (double x : {0.5, 1.0, 2.0}) {
    const auto probe = fo_steady_state_probe(kP, x * w0, 1e-8, 64, 256);
    const cdouble exact = alpha_fo(kP, x * w0);
    worst_amp = std::max(
        worst_amp,
        std::abs(std::abs(probe.alpha_measured) / std::abs(exact) - 1.0));
    worst_phase =
        std::max(worst_phase,
                 std::abs(std::arg(probe.alpha_measured) - std::arg(exact)));
  }

  // memory-force oracle against the auxiliary state on a driven trajectory
  const double dt = (2.0 * pi / w0) / 512.0;
  const auto traj = integrate_fo(kP, ForceProfile::sinusoid(1e-8, w0),
                                 5 * 512 * dt, dt);
  double peak = 0;
  for (std::size_t i = 0; i < traj.times.size(); ++i)
    peak = std::max(peak, std::abs(memory_force_aux(kP, traj, i)));
  double worst_conv = 0;
  for (std::size_t i = 10; i < traj.times.size(); ++i) {
    const double aux = memory_force_aux(kP, traj, i);
    const double conv = convolution_oracle(kP, traj.times, traj.V, i);
    worst_conv = std::max(worst_conv, std::abs(conv - aux) / peak);
  }
  const double secs = t.seconds();

  const bool ok = worst_amp <= 1e-3 && worst_phase <= 1e-3 &&
                  worst_conv <= 1e-6 && secs < 60.0;
  report(7, "time/frequency consistency", ok,
         fmt("|ampl err| %.2e, |phase err| %.2e (<=1e-3); conv oracle %.2e "
             "(<=1e-6); %.1fs",
             worst_amp, worst_phase, worst_conv, secs));
}

// --- 8: runaways and preacceleration -----------------------------------------

void criterion_runaway_preacceleration() {
  // free-particle runaway rate
  const auto pfree = make_params(kP.charge, kP.observed_mass, kP.speed_of_light,
                                 0.0, CutoffSpec::critical());
  const auto run = integrate_ald(pfree, ForceProfile::zero(), 50.0 * pfree.tau_e,
                                 0.02 * pfree.tau_e, 1.0);
  const auto verdict = stability_verdict(run, pfree);
  const bool run_ok =
      verdict.runaway && rel_ok(verdict.growth_rate, 1.0 / pfree.tau_e, 1e-2);

  // bounded step response with quiescent pre-onset history (the damping is
  // parameter-dependent; a resonance nearer the cutoff lets the transient
  // decay inside the window without changing the physics being tested)
  const auto pd = make_params(kP.charge, kP.observed_mass, kP.speed_of_light,
                              0.05 / kP.tau_e, CutoffSpec::critical());
  const double period = 2.0 * pi / pd.resonance_omega0;
  const double dt = period / 256.0;
  const double t_on = 20 * 256 * dt;
  const double f0 = 1e-8;
  const auto step =
      integrate_fo(pd, ForceProfile::step(f0, t_on), 140.0 * period, dt);
  const double target = f0 / pd.spring_k;
  double pre = 0;
  for (std::size_t i = 0; i < step.times.size(); ++i)
    if (step.times[i] < t_on) pre = std::max(pre, std::abs(step.R[i]));
  const bool step_ok =
      rel_ok(step.R.back(), target, 1e-6) && pre <= 1e-12 * target;

  // preacceleration ratio on the runaway-free branch
  const double tau = pfree.tau_e;
  std::vector<double> grid;
  for (int k = 0; k <= 160; ++k) grid.push_back(k * (tau / 8.0));
  const auto nr = ald_nonrunaway_response(
      pfree, ForceProfile::step(f0, 10.0 * tau), grid);
  double a_before = 0, a_at = 0;
  for (std::size_t i = 0; i < nr.times.size(); ++i) {
    if (std::abs(nr.times[i] - 9.0 * tau) < 1e-3 * tau) a_before = nr.aux[i];
    if (std::abs(nr.times[i] - 10.0 * tau) < 1e-3 * tau) a_at = nr.aux[i];
  }
  const bool pre_ok = rel_ok(a_before / a_at, std::exp(-1.0), 1e-9);

  report(8, "runaway / preacceleration", run_ok && step_ok && pre_ok,
         fmt("growth %.6e vs 1/tau %.6e; R_inf err %.1e, pre-onset %.1e; "
             "A(-tau)/A(0) err %.1e",
             verdict.growth_rate, 1.0 / pfree.tau_e,
             std::abs(step.R.back() / target - 1.0), pre / target,
             std::abs(a_before / a_at * std::exp(1.0) - 1.0)));
}

// --- 9: two-band comparison --------------------------------------------------

void criterion_figure_bands() {
  const auto ald = ResponseModel::ald(kP);
  const auto fo = ResponseModel::fo(kP);
  const double w0 = kP.resonance_omega0;

  double main_worst = 0;
  for (double w : make_log_grid(0.1 * w0, 10.0 * w0, 1000).points) {
    const cdouble a = ald.alpha(w), b = fo.alpha(w);
    main_worst = std::max(main_worst, std::abs(b - a) / std::abs(a));
  }
  double inset_worst = 0;
  const double it = 1.0 / kP.tau_e;
  for (double w : make_log_grid(1e-2 * it, 10.0 * it, 1000).points) {
    const cdouble a = ald.alpha(w), b = fo.alpha(w);
    inset_worst = std::max(inset_worst, std::abs(b - a) / std::abs(a));
  }
  const bool ok = main_worst <= 1e-6 && inset_worst > 1e-2;
  report(9, "two-band model comparison", ok,
         fmt("main band max rel diff %.2e (<=1e-6); inset max %.2f (>1e-2)",
             main_worst, inset_worst));
}

// --- 10: kernel self-consistency ----------------------------------------------

void criterion_kernel_consistency() {
  const auto kernel = kernel_from_lorentzian(kP, kP.cutoff_omega);
  const double W = kP.cutoff_omega;

  // (a) half-line Fourier transform of the time-domain kernel matches mu~
  const auto gl = detail::gauss_legendre(16);
  auto smooth_ft = [&](double omega) {
    const double t_max = 45.0 / W;
    const double panel = 0.5 * std::min(1.0 / W, pi / std::max(omega, W / 40));
    cdouble acc = 0;
    for (double t0 = 0; t0 < t_max; t0 += panel) {
      const double h = std::min(panel, t_max - t0);
      for (int i = 0; i < 16; ++i) {
        const double t = t0 + 0.5 * h * (gl.nodes[i] + 1.0);
        acc += 0.5 * h * gl.weights[i] * kernel_time_domain(kernel, t).smooth *
               std::exp(1i * omega * t);
      }
    }
    return acc;
  };
  double worst_a = 0;
  for (double f : {0.05, 0.3, 1.0, 3.0, 10.0}) {
    const double w = f * W;
    const cdouble numeric = cdouble(kernel.instantaneous_weight) + smooth_ft(w);
    worst_a = std::max(worst_a, std::abs(numeric - mu_tilde(kernel, w)) /
                                    std::abs(mu_tilde(kernel, w)));
  }

  // (b) Re mu~ equals the radiated-power identity with the Lorentzian factor
  const auto lor = FormFactor::lorentzian(W, kP.speed_of_light);
  const double mt =
      2.0 * kP.charge * kP.charge / (3.0 * std::pow(kP.speed_of_light, 3));
  double worst_b = 0;
  for (double w : make_log_grid(1e11, 1e25, 300).points) {
    const double rhs = mt * w * w * lor.squared(w / kP.speed_of_light);
    worst_b = std::max(worst_b,
                       std::abs(mu_tilde(kernel, w).real() - rhs) / rhs);
  }

  // (c) the general kernel response collapses to the critical closed form
  double worst_c = 0;
  for (double w : make_log_grid(1e12, 1e22, 2000).points) {
    const cdouble a = alpha_general(kP, lor, w);
    const cdouble b = alpha_fo(kP, w);
    worst_c = std::max(worst_c, std::abs(a - b) / std::abs(b));
  }

  const bool ok = worst_a <= 1e-12 && worst_b <= 1e-12 && worst_c <= 1e-12;
  report(10, "kernel self-consistency", ok,
         fmt("transform duality %.2e; power identity %.2e; reduction %.2e "
             "(all <=1e-12)",
             worst_a, worst_b, worst_c));
}

} // namespace

int main() {
  std::printf("acceptance: radiative-reaction oscillator library "
              "(electron-cgs preset)\n");
  criterion_optical_and_crossing();
  criterion_poles();
  criterion_kk();
  criterion_cross_sections();
  criterion_quadrature();
  criterion_steady_state();
  criterion_runaway_preacceleration();
  criterion_figure_bands();
  criterion_kernel_consistency();
  if (g_failures) {
    std::printf("%d criterion(s) FAILED\n", g_failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
