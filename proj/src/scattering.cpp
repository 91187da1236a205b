#include "radosc/scattering.hpp"

#include <cmath>
#include <numbers>

#include "radosc/detail/numerics.hpp"
#include "radosc/errors.hpp"

namespace radosc {

using namespace std::complex_literals;
using std::numbers::pi;

ScatteringGeometry ScatteringGeometry::make(Vec3 k0, Vec3 e0hat, Vec3 ks) {
  const double k = norm(k0);
  if (!(k > 0.0)) fail(ErrorCode::BadConfig, "geometry: |k0| must be > 0");
  if (std::abs(norm(e0hat) - 1.0) > 1e-12)
    fail(ErrorCode::BadConfig, "geometry: e0hat must be a unit vector");
  if (std::abs(dot(e0hat, k0)) > 1e-9 * k)
    fail(ErrorCode::BadConfig, "geometry: e0hat must be orthogonal to k0");
  if (std::abs(norm(ks) - k) > 1e-9 * k)
    fail(ErrorCode::BadConfig, "geometry: inelastic |ks| != |k0|");
  return {k0, e0hat, ks};
}

Vec3c radiation_zone_field(const PhysicalParams& p, const FormFactor& ff,
                           Vec3c R_tilde, const ScatteringGeometry& g,
                           double r) {
  if (!(r > 0.0)) fail(ErrorCode::ZeroRadius, "radiation_zone_field: r must be > 0");
  const double k = g.k();
  const Vec3 rhat = (1.0 / norm(g.ks)) * g.ks;
  // transverse projection R~ - (r^.R~) r^
  const cdouble along = dot(rhat, R_tilde);
  const Vec3c trans = R_tilde - along * to_complex(rhat);
  const cdouble pref = p.charge * ff.value(norm(g.ks)) * k * k *
                       std::exp(cdouble(0.0, k * r)) / r;
  return pref * trans;
}

Vec3c scattering_amplitude(const PhysicalParams& p, const FormFactor& ff,
                           cdouble alpha_value, const ScatteringGeometry& g) {
  const double k = g.k();
  const double e2 = p.charge * p.charge;
  // f*(ks) f(k0): both real for the modeled distributions
  const double ffk = ff.value(norm(g.ks)) * ff.value(k);
  const double kse0 = dot(g.ks, g.e0hat);
  const Vec3 pattern = (k * k) * g.e0hat - kse0 * g.ks;
  const cdouble s = ffk * e2 * alpha_value;
  return {s * pattern.x, s * pattern.y, s * pattern.z};
}

double differential_cross_section(const PhysicalParams& p, const FormFactor& ff,
                                  cdouble alpha_value,
                                  const ScatteringGeometry& g) {
  const Vec3c f = scattering_amplitude(p, ff, alpha_value, g);
  const double n = norm(f);
  return n * n;
}

double sigma_total_integrated(const PhysicalParams& p, const FormFactor& ff,
                              cdouble alpha_value, double omega,
                              int ff_exponent) {
  if (!(omega > 0.0)) fail(ErrorCode::BadConfig, "sigma_total: omega must be > 0");
  if (ff_exponent != 2 && ff_exponent != 4)
    fail(ErrorCode::BadConfig, "sigma_total: form-factor exponent must be 2 or 4");
  const double k = omega / p.speed_of_light;
  const double f2 = ff.squared(k);
  const double fpow = (ff_exponent == 4) ? f2 * f2 : f2;
  const double e2 = p.charge * p.charge;
  return (8.0 * pi / 3.0) * k * k * k * k * fpow * e2 * e2 *
         std::norm(alpha_value);
}

namespace {

// Fixed deterministic product rule: Gauss-Legendre in cos(theta), uniform in
// phi, with theta measured from k0.  Doubled until two successive levels
// agree to rel_tol.
double sphere_integral(const PhysicalParams& p, const FormFactor& ff,
                       cdouble alpha_value, double k, double rel_tol) {
  // orthonormal frame: k0 along z, e0 along x
  const Vec3 khat{0, 0, 1}, e0{1, 0, 0}, e1{0, 1, 0};
  double prev = 0;
  for (int n = 8; n <= 512; n *= 2) {
    const auto gl = detail::gauss_legendre(n);
    const int nphi = 2 * n;
    double total = 0;
    for (int i = 0; i < n; ++i) {
      const double ct = gl.nodes[i];
      const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
      double ring = 0;
      for (int j = 0; j < nphi; ++j) {
        const double phi = 2.0 * pi * (j + 0.5) / nphi;
        const Vec3 rhat = (st * std::cos(phi)) * e0 + (st * std::sin(phi)) * e1 +
                          ct * khat;
        const Vec3 ks = k * rhat;
        const auto g = ScatteringGeometry{k * khat, e0, ks};
        ring += differential_cross_section(p, ff, alpha_value, g);
      }
      total += gl.weights[i] * ring * (2.0 * pi / nphi);
    }
    if (n > 8 && std::abs(total - prev) <= rel_tol * std::abs(total))
      return total;
    prev = total;
  }
  return prev;
}

} // namespace

double sigma_total_quadrature(const PhysicalParams& p, const FormFactor& ff,
                              cdouble alpha_value, double omega,
                              double rel_tol) {
  if (!(omega > 0.0)) fail(ErrorCode::BadConfig, "sigma_total: omega must be > 0");
  const double k = omega / p.speed_of_light;
  return sphere_integral(p, ff, alpha_value, k, rel_tol);
}

ScatteringReport optical_theorem_residual(const PhysicalParams& p,
                                          const FormFactor& ff,
                                          const ResponseModel& model,
                                          double omega, int ff_exponent) {
  if (!(omega > 0.0))
    fail(ErrorCode::BadConfig, "optical_theorem_residual: omega must be > 0");
  const double k = omega / p.speed_of_light;
  const cdouble a = model.alpha(omega);

  ScatteringReport rep;
  rep.omega = omega;

  // forward amplitude projected on the incident polarization
  const double f2 = ff.squared(k);
  rep.forward_amplitude = k * k * f2 * p.charge * p.charge * a;
  rep.sigma_total_optical = (4.0 * pi / k) * rep.forward_amplitude.imag();
  rep.sigma_total_integrated =
      sigma_total_integrated(p, ff, a, omega, ff_exponent);
  rep.residual_relative =
      std::abs(rep.sigma_total_integrated - rep.sigma_total_optical) /
      std::abs(rep.sigma_total_optical);

  // equivalent statement: Im alpha = (2 e^2 w^3 / 3 c^3) |alpha|^2 |f(k0)|^2
  const double c3 = std::pow(p.speed_of_light, 3);
  const double rhs = (2.0 * p.charge * p.charge * omega * omega * omega /
                      (3.0 * c3)) *
                     std::norm(a) * f2;
  rep.residual_identity = std::abs(a.imag() - rhs) / std::abs(a.imag());
  return rep;
}

double rayleigh_cross_section_via_index(const PhysicalParams& p,
                                        const ResponseModel& model,
                                        double omega, double number_density) {
  if (!(number_density > 0.0))
    fail(ErrorCode::BadConfig, "rayleigh_via_index: N must be > 0");
  const cdouble a = model.alpha(omega);
  const cdouble n2m1 = 4.0 * pi * number_density * p.charge * p.charge * a;
  if (std::abs(n2m1) > 0.1)
    fail(ErrorCode::NotDilute,
         "rayleigh_via_index: |n^2 - 1| > 0.1, dilute-gas formula invalid");
  const double w_c = omega / p.speed_of_light;
  return std::norm(n2m1) / (6.0 * pi * number_density * number_density) *
         w_c * w_c * w_c * w_c;
}

} // namespace radosc
