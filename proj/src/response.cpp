#include "radosc/response.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "radosc/detail/numerics.hpp"
#include "radosc/errors.hpp"

namespace radosc {

using namespace std::complex_literals;

// ---------------------------------------------------------------------------
// form factor
// ---------------------------------------------------------------------------

FormFactor FormFactor::point() {
  FormFactor f;
  f.kind_ = FormFactorKind::point;
  return f;
}

FormFactor FormFactor::lorentzian(double cutoff_omega, double speed_of_light) {
  if (!(cutoff_omega > 0.0) || !std::isfinite(cutoff_omega) ||
      !(speed_of_light > 0.0))
    fail(ErrorCode::NonFiniteInput, "lorentzian form factor: cutoff and c must be > 0");
  FormFactor f;
  f.kind_ = FormFactorKind::lorentzian_cutoff;
  f.cutoff_omega_ = cutoff_omega;
  f.c_ = speed_of_light;
  return f;
}

FormFactor FormFactor::tabulated(std::vector<std::pair<double, double>> table) {
  if (table.size() < 2)
    fail(ErrorCode::UnsupportedFormFactor, "tabulated form factor: need >= 2 rows");
  if (table.front().first != 0.0 || table.front().second != 1.0)
    fail(ErrorCode::UnsupportedFormFactor,
         "tabulated form factor: first row must be (k=0, |f|^2=1)");
  for (std::size_t i = 0; i < table.size(); ++i) {
    const auto [k, f2] = table[i];
    if (!std::isfinite(k) || !std::isfinite(f2))
      fail(ErrorCode::NonFiniteInput, "tabulated form factor: non-finite entry");
    if (!(f2 > 0.0) || f2 > 1.0)
      fail(ErrorCode::UnsupportedFormFactor,
           "tabulated form factor: |f|^2 must lie in (0, 1]");
    if (i > 0 && !(k > table[i - 1].first))
      fail(ErrorCode::UnsupportedFormFactor,
           "tabulated form factor: k must be strictly increasing");
    if (i > 0 && f2 > table[i - 1].second)
      fail(ErrorCode::UnsupportedFormFactor,
           "tabulated form factor: |f|^2 must be non-increasing");
  }
  FormFactor f;
  f.kind_ = FormFactorKind::tabulated;
  f.table_ = std::move(table);
  return f;
}

double FormFactor::squared(double k) const {
  k = std::abs(k);
  switch (kind_) {
    case FormFactorKind::point:
      return 1.0;
    case FormFactorKind::lorentzian_cutoff: {
      const double ck = c_ * k;
      return cutoff_omega_ * cutoff_omega_ /
             (cutoff_omega_ * cutoff_omega_ + ck * ck);
    }
    case FormFactorKind::tabulated: {
      const auto& t = table_;
      if (k >= t.back().first) {
        const double kn = t.back().first;
        const double fn = t.back().second;
        if (kn == 0.0) return fn;
        const double r = kn / k;
        return fn * r * r; // 1/k^2 tail
      }
      auto it = std::upper_bound(
          t.begin(), t.end(), k,
          [](double kk, const auto& row) { return kk < row.first; });
      const auto hi = it;
      const auto lo = it - 1;
      const double u = (k - lo->first) / (hi->first - lo->first);
      return lo->second + u * (hi->second - lo->second);
    }
  }
  return 1.0;
}

double FormFactor::value(double k) const { return std::sqrt(squared(k)); }

// ---------------------------------------------------------------------------
// memory kernel
// ---------------------------------------------------------------------------

MemoryKernel kernel_from_lorentzian(const PhysicalParams& p, double cutoff_omega) {
  if (!(cutoff_omega > 0.0))
    fail(ErrorCode::NonFiniteInput, "kernel: cutoff must be > 0");
  MemoryKernel k;
  const double w = p.observed_mass * cutoff_omega * cutoff_omega * p.tau_e;
  k.instantaneous_weight = w;
  k.exponential_terms.push_back({w * cutoff_omega, cutoff_omega});
  return k;
}

cdouble mu_tilde(const MemoryKernel& k, cdouble omega) {
  // Rearranged as mu~(w) = c0 - i w sum_i a_i / (r_i (r_i - i w)) with
  // c0 = w_inst - sum_i a_i / r_i: the naive form w_inst - sum a_i/(r_i - iw)
  // cancels catastrophically at |w| << r_i, where Re mu~ ~ (w/r)^2 w_inst.
  // c0 vanishes identically for kernels derived from form factors
  // (mu~(0) = 0); a roundoff-sized remainder is snapped away.
  double c0 = k.instantaneous_weight;
  for (const auto& t : k.exponential_terms) c0 -= t.amplitude / t.rate;
  if (std::abs(c0) < 1e-12 * std::abs(k.instantaneous_weight)) c0 = 0.0;
  cdouble s = c0;
  for (const auto& t : k.exponential_terms)
    s -= 1i * omega * t.amplitude / (t.rate * (t.rate - 1i * omega));
  return s;
}

KernelSample kernel_time_domain(const MemoryKernel& k, double t) {
  if (t < 0.0) fail(ErrorCode::NegativeTime, "kernel_time_domain: t must be >= 0");
  double s = 0;
  for (const auto& e : k.exponential_terms) s -= e.amplitude * std::exp(-e.rate * t);
  return {s, k.instantaneous_weight};
}

// ---------------------------------------------------------------------------
// polarizabilities
// ---------------------------------------------------------------------------

namespace {

// Pole-proximity gate: the denominator (in units of omega^2, i.e. with the
// leading mass divided out) must exceed 1e-8 of the characteristic scale
// max(w0^2, |zeta|^2).
void check_off_pole(cdouble denom, const PhysicalParams& p, cdouble zeta,
                    const char* who) {
  const double scale = std::max(p.resonance_omega0 * p.resonance_omega0,
                                std::norm(zeta));
  if (!(std::abs(denom) > 1e-8 * scale))
    fail(ErrorCode::PoleEvaluation,
         std::string(who) + ": zeta within tolerance of a pole");
}

} // namespace

cdouble alpha_ald(const PhysicalParams& p, cdouble zeta) {
  const double w0 = p.resonance_omega0;
  // (w0 - z)(w0 + z) keeps full precision near resonance
  const cdouble d = (w0 - zeta) * (w0 + zeta) - 1i * p.tau_e * zeta * zeta * zeta;
  check_off_pole(d, p, zeta, "alpha_ald");
  return 1.0 / (p.observed_mass * d);
}

cdouble alpha_fo(const PhysicalParams& p, cdouble zeta) {
  if (!p.critical_cutoff)
    fail(ErrorCode::WrongCutoff, "alpha_fo: params must use the critical cutoff");
  const double w0 = p.resonance_omega0;
  const double tau = p.tau_e;
  const double gamma = w0 * w0 * tau;
  if (zeta.imag() == 0.0) {
    // On the real axis expand (1 - i w tau)(D*) / |D|^2 analytically: the
    // imaginary numerator gamma w - w tau (w0^2 - w^2) collapses to
    // tau w^3 exactly, a cancellation worth seven digits at w << w0 that
    // complex division cannot recover.
    const double w = zeta.real();
    const double dr = (w0 - w) * (w0 + w);
    const double di = gamma * w;
    const double d2 = dr * dr + di * di;
    check_off_pole(cdouble(dr, -di), p, zeta, "alpha_fo");
    const double re = (dr + gamma * tau * w * w) / (p.observed_mass * d2);
    const double im = tau * w * w * w / (p.observed_mass * d2);
    return {re, im};
  }
  const cdouble d = (w0 - zeta) * (w0 + zeta) - 1i * gamma * zeta;
  check_off_pole(d, p, zeta, "alpha_fo");
  return (1.0 - 1i * zeta * tau) / (p.observed_mass * d);
}

cdouble alpha_general(const PhysicalParams& p, const FormFactor& ff, cdouble zeta) {
  if (p.bare_mass < 0.0)
    fail(ErrorCode::NegativeBareMass, "alpha_general: bare mass must be >= 0");

  switch (ff.kind()) {
    case FormFactorKind::point:
      // No finite cutoff: the point limit is served by its own closed form.
      fail(ErrorCode::UnsupportedFormFactor,
           "alpha_general: point form factor has no finite kernel; use alpha_ald");
    case FormFactorKind::lorentzian_cutoff: {
      const double W = ff.cutoff_omega();
      const double M = p.observed_mass;
      const double K = p.spring_k;
      const double m = p.bare_mass;
      const double w0 = p.resonance_omega0;
      // alpha = (z + i W) / P(z),
      // P(z) = z (K - m z^2) + i W M (w0 - z)(w0 + z)
      //      = -m z^3 - i M W z^2 + K z + i K W     (using m + M W tau_e = M)
      const cdouble P = zeta * (K - m * zeta * zeta) +
                        1i * W * M * ((w0 - zeta) * (w0 + zeta));
      const cdouble num = zeta + 1i * W;
      const double scale = std::max(p.resonance_omega0 * p.resonance_omega0,
                                    std::norm(zeta));
      if (!(std::abs(P) > 1e-8 * M * scale * std::abs(num)))
        fail(ErrorCode::PoleEvaluation, "alpha_general: zeta within tolerance of a pole");
      return num / P;
    }
    case FormFactorKind::tabulated: {
      if (zeta.imag() != 0.0)
        fail(ErrorCode::UnsupportedFormFactor,
             "alpha_general: tabulated form factors support real omega only");
      const double w = zeta.real();
      const cdouble mu = mu_tilde_tabulated(p, ff, w);
      const cdouble d = -p.bare_mass * w * w - 1i * w * mu + p.spring_k;
      const double scale = p.observed_mass *
                           std::max(p.resonance_omega0 * p.resonance_omega0, w * w);
      if (!(std::abs(d) > 1e-8 * scale))
        fail(ErrorCode::PoleEvaluation, "alpha_general: omega within tolerance of a pole");
      return 1.0 / d;
    }
  }
  fail(ErrorCode::UnsupportedFormFactor, "alpha_general: unknown form factor");
}

cdouble mu_tilde_tabulated(const PhysicalParams& p, const FormFactor& ff,
                           double omega) {
  if (ff.kind() != FormFactorKind::tabulated)
    fail(ErrorCode::UnsupportedFormFactor, "mu_tilde_tabulated: wrong kind");
  const double w = std::abs(omega);
  const double c = p.speed_of_light;
  const double mt = p.observed_mass * p.tau_e; // 2 e^2 / (3 c^3)

  auto re_mu = [&](double x) { return mt * x * x * ff.squared(x / c); };
  const double re_at_w = re_mu(w);
  if (omega == 0.0) return 0.0;

  // Dense log sampling grid spanning the evaluation point and the cutoff
  // region (x = omega' of the dispersion integral).
  double span_lo = w / 1e3, span_hi = w * 1e3;
  span_lo = std::min(span_lo, 1e-3 / p.tau_e);
  span_hi = std::max(span_hi, 1e3 / p.tau_e);
  const int per_decade = 400;
  const int n = int(std::ceil(std::log10(span_hi / span_lo) * per_decade)) + 1;
  std::vector<double> x(n), g(n);
  const double llo = std::log(span_lo), lhi = std::log(span_hi);
  for (int i = 0; i < n; ++i)
    x[i] = std::exp(llo + (lhi - llo) * double(i) / double(n - 1));
  for (int i = 0; i < n; ++i) g[i] = re_mu(x[i]);

  const double h = w * 1e-6;
  const double d_at_w = (re_mu(w + h) - re_mu(w - h)) / (2.0 * h);
  double pv = detail::pv_dispersion_grid(x, g, w, re_at_w, d_at_w);

  // tails: Re mu~ -> const above the grid (1/k^2 table extension), ~ x^2 below
  const double b = x.back(), a = x.front();
  const double c_hi = re_mu(b);
  pv += (w < b) ? (c_hi / (2.0 * w)) * std::log((b + w) / (b - w)) : 0.0;
  const double c_lo = g.front() / (a * a);
  // int_0^a x^2/(x^2-w^2) dx = a + (w/2) ln((w-a)/(w+a)),  a < w
  if (a < w) pv += c_lo * (a + (w / 2.0) * std::log((w - a) / (w + a)));

  const double im = -(2.0 * w / std::numbers::pi) * pv;
  // crossing symmetry: Re even, Im odd
  return {re_at_w, omega < 0 ? -im : im};
}

// ---------------------------------------------------------------------------
// response model
// ---------------------------------------------------------------------------

ResponseModel ResponseModel::ald(const PhysicalParams& p) {
  ResponseModel m;
  m.kind_ = ModelKind::ald;
  m.params_ = p;
  m.ff_ = FormFactor::point();
  return m;
}

ResponseModel ResponseModel::fo(const PhysicalParams& p) {
  if (!p.critical_cutoff)
    fail(ErrorCode::WrongCutoff, "ResponseModel::fo: critical cutoff required");
  ResponseModel m;
  m.kind_ = ModelKind::fo_critical;
  m.params_ = p;
  m.ff_ = FormFactor::lorentzian(p.cutoff_omega, p.speed_of_light);
  m.kernel_ = kernel_from_lorentzian(p, p.cutoff_omega);
  return m;
}

ResponseModel ResponseModel::general(const PhysicalParams& p, FormFactor ff) {
  if (p.bare_mass < 0.0)
    fail(ErrorCode::NegativeBareMass, "ResponseModel::general: bare mass >= 0 required");
  ResponseModel m;
  m.kind_ = ModelKind::general_kernel;
  m.params_ = p;
  m.ff_ = std::move(ff);
  if (m.ff_.kind() == FormFactorKind::lorentzian_cutoff)
    m.kernel_ = kernel_from_lorentzian(p, m.ff_.cutoff_omega());
  return m;
}

cdouble ResponseModel::alpha(cdouble zeta) const {
  switch (kind_) {
    case ModelKind::ald: return alpha_ald(params_, zeta);
    case ModelKind::fo_critical: return alpha_fo(params_, zeta);
    case ModelKind::general_kernel: return alpha_general(params_, ff_, zeta);
  }
  fail(ErrorCode::BadConfig, "ResponseModel: bad kind");
}

double ResponseModel::form_factor_squared(double k) const {
  if (kind_ == ModelKind::ald) return 1.0;
  return ff_.squared(k);
}

const char* ResponseModel::name() const {
  switch (kind_) {
    case ModelKind::ald: return "ald";
    case ModelKind::fo_critical: return "fo";
    case ModelKind::general_kernel: return "general-kernel";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// driving force
// ---------------------------------------------------------------------------

Vec3c driving_force(const PhysicalParams& p, const FormFactor& ff, Vec3 E0,
                    Vec3 k0, double omega, double t) {
  const double k = norm(k0);
  const double ck = p.speed_of_light * k;
  if (std::abs(ck - omega) > 1e-9 * std::max(std::abs(omega), ck))
    fail(ErrorCode::InconsistentWavevector,
         "driving_force: |k0| c must equal omega");
  const double f = ff.value(k);
  const cdouble phase = std::exp(cdouble(0.0, -omega * t));
  const cdouble s = p.charge * f * phase;
  return {s * E0.x, s * E0.y, s * E0.z};
}

} // namespace radosc
