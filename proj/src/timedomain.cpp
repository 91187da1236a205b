#include "radosc/timedomain.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "radosc/causality.hpp"
#include "radosc/detail/numerics.hpp"
#include "radosc/errors.hpp"

namespace radosc {

using namespace std::complex_literals;
using std::numbers::pi;

// ---------------------------------------------------------------------------
// force profiles
// ---------------------------------------------------------------------------

ForceProfile ForceProfile::step(double f0, double t_on) {
  if (!std::isfinite(f0)) fail(ErrorCode::NonFiniteInput, "force: amplitude");
  return {ForceKind::step, f0, 0.0, t_on};
}
ForceProfile ForceProfile::sinusoid(double f0, double omega, double t_on) {
  if (!std::isfinite(f0)) fail(ErrorCode::NonFiniteInput, "force: amplitude");
  if (!(omega > 0.0)) fail(ErrorCode::BadConfig, "sinusoid force: omega must be > 0");
  return {ForceKind::sinusoid, f0, omega, t_on};
}
ForceProfile ForceProfile::impulse(double kick, double t_on) {
  if (!std::isfinite(kick)) fail(ErrorCode::NonFiniteInput, "force: kick");
  return {ForceKind::impulse, kick, 0.0, t_on};
}
ForceProfile ForceProfile::zero() { return {ForceKind::zero, 0.0, 0.0, 0.0}; }

double ForceProfile::operator()(double t) const {
  switch (kind) {
    case ForceKind::step: return t >= t_on ? amplitude : 0.0;
    case ForceKind::sinusoid:
      return t >= t_on ? amplitude * std::sin(omega * (t - t_on)) : 0.0;
    case ForceKind::impulse: return 0.0; // state jump, not a sampled value
    case ForceKind::zero: return 0.0;
  }
  return 0.0;
}

// ---------------------------------------------------------------------------
// finite-size integrator
// ---------------------------------------------------------------------------

namespace {

constexpr std::size_t kMaxSteps = 50'000'000;

ForceProfile snap_onset(const ForceProfile& f, double dt) {
  ForceProfile g = f;
  g.t_on = std::round(f.t_on / dt) * dt;
  return g;
}

std::size_t step_count(double t_end, double dt) {
  if (!(dt > 0) || !(t_end > 0))
    fail(ErrorCode::BadConfig, "integrate: need dt > 0 and t_end > 0");
  const double n = std::ceil(t_end / dt - 1e-9);
  if (n > double(kMaxSteps)) fail(ErrorCode::BadConfig, "integrate: too many steps");
  return std::size_t(n);
}

// RK4 on the critical-cutoff pair (R, y).
Trajectory integrate_fo_critical(const PhysicalParams& p,
                                 const ForceProfile& force, double t_end,
                                 double dt, FoInitialState init) {
  const double M = p.observed_mass, K = p.spring_k, tau = p.tau_e;
  const ForceProfile f = snap_onset(force, dt);
  const std::size_t n = step_count(t_end, dt);

  Trajectory traj;
  traj.model = TrajectoryModel::fo;
  traj.dt = dt;
  traj.time_scale =
      p.resonance_omega0 > 0 ? 1.0 / p.resonance_omega0 : tau;
  traj.times.reserve(n + 1);
  traj.R.reserve(n + 1);
  traj.V.reserve(n + 1);
  traj.aux.reserve(n + 1);

  double R = init.R, y = init.y;
  auto drift = [&](double t, double r, double yy, double& dR, double& dy) {
    const double u = f(t) - K * r;
    dR = yy + (tau / M) * u;
    dy = u / M;
  };
  auto push = [&](std::size_t i, double r, double yy) {
    const double t = double(i) * dt;
    traj.times.push_back(t);
    traj.R.push_back(r);
    traj.V.push_back(yy + (tau / M) * (f(t) - K * r));
    traj.aux.push_back(yy);
  };

  push(0, R, y);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = double(i) * dt;
    if (f.kind == ForceKind::impulse &&
        std::abs(t - f.t_on) < 0.5 * dt) {
      R += (tau / M) * f.amplitude;
      y += f.amplitude / M;
    }
    double k1R, k1y, k2R, k2y, k3R, k3y, k4R, k4y;
    drift(t, R, y, k1R, k1y);
    drift(t + 0.5 * dt, R + 0.5 * dt * k1R, y + 0.5 * dt * k1y, k2R, k2y);
    drift(t + 0.5 * dt, R + 0.5 * dt * k2R, y + 0.5 * dt * k2y, k3R, k3y);
    drift(t + dt, R + dt * k3R, y + dt * k3y, k4R, k4y);
    R += (dt / 6.0) * (k1R + 2 * k2R + 2 * k3R + k4R);
    y += (dt / 6.0) * (k1y + 2 * k2y + 2 * k3y + k4y);
    push(i + 1, R, y);
  }
  return traj;
}

// Exact exponential propagator on the stiff triple (R, V, y) for m > 0.
// The system is nondimensionalized before the eigendecomposition: the raw
// matrix mixes K/m ~ 1e44 with Omega ~ 1e22 and the slow eigenvalues would
// drown in eps * ||A||.  With u = S t and state (R, V/S, y/S), where S is
// the fastest rate in the problem, every entry is O(1).
Trajectory integrate_fo_general(const PhysicalParams& p,
                                const ForceProfile& force, double t_end,
                                double dt, FoInitialState init) {
  const double M = p.observed_mass, K = p.spring_k, tau = p.tau_e;
  const double m = p.bare_mass, W = p.cutoff_omega;
  const double wi = M * W * W * tau; // instantaneous kernel weight
  const ForceProfile f = snap_onset(force, dt);
  const std::size_t n = step_count(t_end, dt);

  const double S = std::max({std::sqrt(K / m), W, wi / m});
  const double h = S * dt; // step in scaled time

  Eigen::Matrix3cd A;
  A << 0, 1, 0, //
      -K / (m * S * S), -wi / (m * S), wi / (m * S), //
      0, W / S, -W / S;
  Eigen::ComplexEigenSolver<Eigen::Matrix3cd> es(A);
  const Eigen::Vector3cd lam = es.eigenvalues();
  const Eigen::Matrix3cd P = es.eigenvectors();
  const Eigen::Matrix3cd Pinv = P.inverse();
  const Eigen::Vector3cd b = Pinv * Eigen::Vector3cd(0, 1.0 / (m * S * S), 0);

  Eigen::Vector3cd elh;
  for (int i = 0; i < 3; ++i)
    elh(i) = (lam(i).real() * h < -745.0) ? 0.0 : std::exp(lam(i) * h);

  Trajectory traj;
  traj.model = TrajectoryModel::fo;
  traj.dt = dt;
  traj.time_scale = p.resonance_omega0 > 0 ? 1.0 / p.resonance_omega0 : 1.0 / W;
  auto push = [&](std::size_t i, const Eigen::Vector3cd& z) {
    const Eigen::Vector3cd x = P * z;
    traj.times.push_back(double(i) * dt);
    traj.R.push_back(x(0).real());
    traj.V.push_back(S * x(1).real());
    traj.aux.push_back(S * x(2).real());
  };

  Eigen::Vector3cd z = Pinv * Eigen::Vector3cd(init.R, init.V / S, init.y / S);
  push(0, z);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = double(i) * dt;
    if (f.kind == ForceKind::impulse && std::abs(t - f.t_on) < 0.5 * dt)
      z += Pinv * Eigen::Vector3cd(0, f.amplitude / (m * S), 0);

    Eigen::Vector3cd zf = Eigen::Vector3cd::Zero();
    if (f.kind == ForceKind::step && t + dt > f.t_on) {
      // constant force over the step
      const double F = f.amplitude;
      for (int j = 0; j < 3; ++j)
        zf(j) = b(j) * h * detail::phi1(lam(j) * h) * F;
    } else if (f.kind == ForceKind::sinusoid && t + dt > f.t_on) {
      // F(s) = Im[Fh exp(i w s)] over the step, integrated exactly;
      // w~ = w/S is the drive frequency in scaled time
      const double wt = f.omega / S;
      const cdouble Fh = f.amplitude * std::exp(1i * f.omega * (t - f.t_on));
      for (int j = 0; j < 3; ++j) {
        const cdouble Jp = h * detail::exp_divided_difference(
                                   cdouble(0, wt * h), lam(j) * h);
        const cdouble Jm = h * detail::exp_divided_difference(
                                   cdouble(0, -wt * h), lam(j) * h);
        zf(j) = b(j) * (Fh * Jp - std::conj(Fh) * Jm) / (2.0i);
      }
    }
    for (int j = 0; j < 3; ++j) z(j) = elh(j) * z(j) + zf(j);
    push(i + 1, z);
  }
  return traj;
}

} // namespace

Trajectory integrate_fo(const PhysicalParams& p, const ForceProfile& force,
                        double t_end, double dt, FoInitialState init) {
  const double wf = force.kind == ForceKind::sinusoid ? force.omega : 0.0;
  if (p.critical_cutoff) {
    if (dt * std::max(p.resonance_omega0, wf) > 0.5)
      fail(ErrorCode::StepTooLarge,
           "integrate_fo: dt must resolve the oscillation (dt*w <= 0.5)");
    return integrate_fo_critical(p, force, t_end, dt, init);
  }
  // general cutoff: the propagator is exact per step; dt is only sampling
  return integrate_fo_general(p, force, t_end, dt, init);
}

// ---------------------------------------------------------------------------
// point-electron integrator
// ---------------------------------------------------------------------------

Trajectory integrate_ald(const PhysicalParams& p, const ForceProfile& force,
                         double t_end, double dt, double A0, double R0,
                         double V0, AldTimeUnit unit) {
  const double w0 = p.resonance_omega0, tau = p.tau_e, M = p.observed_mass;
  double T = tau;
  switch (unit) {
    case AldTimeUnit::tau_e: T = tau; break;
    case AldTimeUnit::inv_omega0:
      if (!(w0 > 0)) fail(ErrorCode::BadConfig, "integrate_ald: w0 = 0 has no 1/w0 unit");
      T = 1.0 / w0;
      break;
    case AldTimeUnit::automatic:
      T = (w0 * tau < 1e-3) ? tau : 1.0 / w0;
      break;
  }
  const double du = dt / T;
  if (du * std::max(1.0, w0 * T) > 0.5)
    fail(ErrorCode::StepTooLarge, "integrate_ald: dt too large for the time unit");
  const ForceProfile f = snap_onset(force, dt);
  const std::size_t n = step_count(t_end, dt);

  Trajectory traj;
  traj.model = TrajectoryModel::ald;
  traj.dt = dt;
  traj.time_scale = T;

  // scaled state: (R, v = T V, a = T^2 A)
  const double w0T = w0 * T;
  const double Ttau = T / tau;
  double R = R0, v = T * V0, a = T * T * A0;
  auto drift = [&](double u, double r, double vv, double aa, double& dR,
                   double& dv, double& da) {
    dR = vv;
    dv = aa;
    da = Ttau * (aa + w0T * w0T * r - T * T * f(u * T) / M);
  };
  auto push = [&](std::size_t i) {
    traj.times.push_back(double(i) * dt);
    traj.R.push_back(R);
    traj.V.push_back(v / T);
    traj.aux.push_back(a / (T * T));
  };

  push(0);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = double(i) * du;
    if (f.kind == ForceKind::impulse && std::abs(u * T - f.t_on) < 0.5 * dt) {
      // the third derivative absorbs the delta: A jumps by -kick/(M tau)
      a += -T * T * f.amplitude / (M * tau);
    }
    double k1R, k1v, k1a, k2R, k2v, k2a, k3R, k3v, k3a, k4R, k4v, k4a;
    drift(u, R, v, a, k1R, k1v, k1a);
    drift(u + 0.5 * du, R + 0.5 * du * k1R, v + 0.5 * du * k1v,
          a + 0.5 * du * k1a, k2R, k2v, k2a);
    drift(u + 0.5 * du, R + 0.5 * du * k2R, v + 0.5 * du * k2v,
          a + 0.5 * du * k2a, k3R, k3v, k3a);
    drift(u + du, R + du * k3R, v + du * k3v, a + du * k3a, k4R, k4v, k4a);
    R += (du / 6.0) * (k1R + 2 * k2R + 2 * k3R + k4R);
    v += (du / 6.0) * (k1v + 2 * k2v + 2 * k3v + k4v);
    a += (du / 6.0) * (k1a + 2 * k2a + 2 * k3a + k4a);
    if (!(std::abs(R) < 1e250 && std::abs(v) < 1e250 && std::abs(a) < 1e250)) {
      traj.truncated = true;
      break;
    }
    push(i + 1);
  }
  return traj;
}

Trajectory ald_nonrunaway_response(const PhysicalParams& p,
                                   const ForceProfile& force,
                                   std::vector<double> t_grid) {
  if (p.resonance_omega0 != 0.0)
    fail(ErrorCode::UnsupportedOmega0,
         "ald_nonrunaway_response: closed-form branch requires omega0 = 0");
  if (t_grid.size() < 2)
    fail(ErrorCode::GridMismatch, "ald_nonrunaway_response: need >= 2 times");
  for (std::size_t i = 1; i < t_grid.size(); ++i)
    if (!(t_grid[i] > t_grid[i - 1]))
      fail(ErrorCode::GridMismatch, "ald_nonrunaway_response: grid not increasing");

  const double M = p.observed_mass, tau = p.tau_e;
  const double F0 = force.amplitude, t_on = force.t_on;

  Trajectory traj;
  traj.model = TrajectoryModel::ald_nonrunaway;
  traj.dt = t_grid.size() > 1 ? t_grid[1] - t_grid[0] : 0.0;
  traj.time_scale = tau;
  traj.times = std::move(t_grid);
  const std::size_t n = traj.times.size();
  traj.R.resize(n);
  traj.V.resize(n);
  traj.aux.resize(n);

  // A(t) = (1/(M tau)) int_t^inf exp(-(s-t)/tau) F(s) ds, runaway-free but
  // acausal: the response anticipates the onset by ~tau.
  auto eval = [&](double t, double& A, double& V, double& R) {
    const double d = t - t_on;
    switch (force.kind) {
      case ForceKind::zero:
        A = V = R = 0.0;
        return;
      case ForceKind::step:
        if (d < 0) {
          const double e = std::exp(d / tau);
          A = (F0 / M) * e;
          V = (F0 * tau / M) * e;
          R = (F0 * tau * tau / M) * e;
        } else {
          A = F0 / M;
          V = (F0 / M) * (tau + d);
          R = (F0 / M) * (tau * tau + tau * d + 0.5 * d * d);
        }
        return;
      case ForceKind::impulse:
        if (d < 0) {
          const double e = std::exp(d / tau);
          A = (F0 / (M * tau)) * e;
          V = (F0 / M) * e;
          R = (F0 * tau / M) * e;
        } else {
          A = 0.0;
          V = F0 / M;
          R = (F0 / M) * (tau + d);
        }
        return;
      case ForceKind::sinusoid: {
        const double w = force.omega;
        const double den = 1.0 + w * w * tau * tau;
        if (d >= 0) {
          A = (F0 / M) * (std::sin(w * d) + w * tau * std::cos(w * d)) / den;
        } else {
          A = (F0 / M) * (w * tau / den) * std::exp(d / tau);
        }
        V = R = 0.0; // accumulated below
        return;
      }
    }
  };

  for (std::size_t i = 0; i < n; ++i)
    eval(traj.times[i], traj.aux[i], traj.V[i], traj.R[i]);

  if (force.kind == ForceKind::sinusoid) {
    // V, R by cumulative trapezoid (diagnostics; A is the contract)
    for (std::size_t i = 1; i < n; ++i) {
      const double h = traj.times[i] - traj.times[i - 1];
      traj.V[i] = traj.V[i - 1] + 0.5 * h * (traj.aux[i] + traj.aux[i - 1]);
    }
    for (std::size_t i = 1; i < n; ++i) {
      const double h = traj.times[i] - traj.times[i - 1];
      traj.R[i] = traj.R[i - 1] + 0.5 * h * (traj.V[i] + traj.V[i - 1]);
    }
  }
  return traj;
}

// ---------------------------------------------------------------------------
// memory-force oracle
// ---------------------------------------------------------------------------

double memory_force_aux(const PhysicalParams& p, const Trajectory& traj,
                        std::size_t at) {
  if (at >= traj.times.size() || traj.model != TrajectoryModel::fo)
    fail(ErrorCode::GridMismatch, "memory_force_aux: bad index or model");
  const double W = p.cutoff_omega;
  const double wi = p.observed_mass * W * W * p.tau_e;
  return wi * (traj.V[at] - traj.aux[at]);
}

double convolution_oracle(const PhysicalParams& p,
                          std::span<const double> times,
                          std::span<const double> V, std::size_t at) {
  const std::size_t n = times.size();
  if (n != V.size() || n < 5 || at >= n)
    fail(ErrorCode::GridMismatch, "convolution_oracle: need >= 5 matching samples");
  const double dt = times[1] - times[0];
  for (std::size_t i = 1; i < n; ++i)
    if (std::abs(times[i] - times[i - 1] - dt) > 1e-9 * dt)
      fail(ErrorCode::GridMismatch, "convolution_oracle: grid must be uniform");

  const double W = p.cutoff_omega;
  const double wi = p.observed_mass * W * W * p.tau_e;
  if (at == 0) return wi * V[0];

  // node slopes, 4th order
  const std::vector<double> d = detail::sampled_derivative(V, dt);

  // integral of exp(-W (t_at - t')) V(t') over the sampled history, exact on
  // a piecewise-cubic Hermite interpolant; ages beyond exp underflow skipped
  double m[4];
  detail::exp_moments(W, dt, m);
  double I = 0;
  for (std::size_t j = at; j-- > 0;) {
    const double xi1 = double(at - j - 1) * dt; // age of the newer endpoint
    const double damp = W * xi1 > 745.0 ? 0.0 : std::exp(-W * xi1);
    if (damp == 0.0) break;
    // cubic in w = age - xi1 over [0, dt]: value/slope at the newer endpoint
    // (j+1) map to w = 0 with reversed slope sign
    const double v0 = V[j + 1], v1 = V[j];
    const double s0 = -d[j + 1], s1 = -d[j];
    const double del = (v1 - v0) / dt;
    const double c0 = v0;
    const double c1 = s0;
    const double c2 = (3.0 * del - 2.0 * s0 - s1) / dt;
    const double c3 = (s0 + s1 - 2.0 * del) / (dt * dt);
    I += damp * (c0 * m[0] + c1 * m[1] + c2 * m[2] + c3 * m[3]);
  }
  return wi * V[at] - wi * W * I;
}

// ---------------------------------------------------------------------------
// stability verdict
// ---------------------------------------------------------------------------

StabilityVerdict stability_verdict(const Trajectory& traj,
                                   const PhysicalParams& p) {
  const std::size_t n = traj.times.size();
  if (n < 1000)
    fail(ErrorCode::TooShort, "stability_verdict: need >= 1000 samples");
  const double T = traj.time_scale;

  std::vector<double> ts, ls;
  for (std::size_t i = 2 * n / 3; i < n; ++i) {
    const double s =
        traj.model == TrajectoryModel::fo
            ? std::abs(traj.R[i]) + T * (std::abs(traj.V[i]) + std::abs(traj.aux[i]))
            : std::abs(traj.R[i]) + T * std::abs(traj.V[i]) +
                  T * T * std::abs(traj.aux[i]);
    if (s > 0) {
      ts.push_back(traj.times[i]);
      ls.push_back(std::log(s));
    }
  }

  StabilityVerdict v;
  if (ts.size() < 10) return v; // quiescent trajectory
  const auto fit = detail::fit_line(ts, ls);
  v.growth_rate = fit.slope;
  v.fit_r2 = fit.r2;
  v.runaway = fit.slope > 1e-3 / T && fit.r2 > 0.999;

  if (v.runaway) {
    ResponseModel model =
        traj.model == TrajectoryModel::fo
            ? (p.critical_cutoff
                   ? ResponseModel::fo(p)
                   : ResponseModel::general(
                         p, FormFactor::lorentzian(p.cutoff_omega,
                                                   p.speed_of_light)))
            : ResponseModel::ald(p);
    const PoleSet ps = find_poles(model);
    cdouble best = 0;
    for (const auto& q : ps.poles) {
      const cdouble s = cdouble(0, -1) * q.location; // s = -i omega
      if (s.real() > best.real()) best = s;
    }
    if (best.real() > 0 &&
        std::abs(v.growth_rate - best.real()) <= 0.01 * best.real())
      v.matched_root = best;
  }
  return v;
}

// ---------------------------------------------------------------------------
// steady-state probe
// ---------------------------------------------------------------------------

SteadyStateProbe fo_steady_state_probe(const PhysicalParams& p, double omega,
                                       double f0, int periods,
                                       int steps_per_period) {
  if (!p.critical_cutoff)
    fail(ErrorCode::WrongCutoff, "fo_steady_state_probe: critical cutoff required");
  if (!(omega > 0) || periods < 2 || steps_per_period < 16)
    fail(ErrorCode::BadConfig, "fo_steady_state_probe: bad arguments");

  const double M = p.observed_mass, K = p.spring_k, tau = p.tau_e;
  const double a11 = -K * tau / M, a12 = 1.0, a21 = -K / M;
  const double b1 = tau / M, b2 = 1.0 / M;

  // particular solution of the ODE pair under F(t) = Re[Fh exp(-i w t)],
  // from the 2x2 linear system (-i w I - A) X = b Fh, deliberately not from
  // the closed-form polarizability, which is what the probe cross-checks
  const cdouble Fh = 1.0i * f0; // F(t) = f0 sin(w t)
  const cdouble miw = cdouble(0, -omega);
  const cdouble det = (miw - a11) * miw - a12 * a21;
  const cdouble X1 = (b1 * Fh * miw + a12 * b2 * Fh) / det;
  const cdouble X2 = ((miw - a11) * b2 * Fh + a21 * b1 * Fh) / det;

  const double dt = (2.0 * pi / omega) / steps_per_period;
  const std::size_t n = std::size_t(periods) * std::size_t(steps_per_period);

  const ForceProfile drive = ForceProfile::sinusoid(f0, omega, 0.0);
  FoInitialState init;
  init.R = X1.real();
  init.y = X2.real();
  Trajectory traj = integrate_fo_critical(p, drive, double(n) * dt, dt, init);

  // demodulate R against exp(+i w t) over the integer-period window
  cdouble acc = 0;
  const std::size_t nn = traj.times.size();
  for (std::size_t i = 0; i < nn; ++i) {
    const double wgt = (i == 0 || i == nn - 1) ? 0.5 : 1.0;
    acc += wgt * traj.R[i] * std::exp(1i * omega * traj.times[i]);
  }
  const cdouble Ahat = acc * dt * (2.0 / (double(nn - 1) * dt));

  SteadyStateProbe probe;
  probe.alpha_measured = Ahat / Fh;
  probe.omega = omega;
  probe.periods = periods;
  probe.steps_per_period = steps_per_period;
  probe.trajectory = std::move(traj);
  return probe;
}

} // namespace radosc
