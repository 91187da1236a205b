#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "radosc/errors.hpp"
#include "radosc/grid.hpp"
#include "radosc/scattering.hpp"

using namespace radosc;
using std::numbers::pi;

namespace {

const PhysicalParams kElectron = preset_params("electron-cgs");

bool rel_close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::abs(b);
}

ScatteringGeometry forward_geometry(double k) {
  return ScatteringGeometry::make({0, 0, k}, {1, 0, 0}, {0, 0, k});
}

// random elastic geometry with a fixed-seed generator
ScatteringGeometry random_geometry(std::mt19937& rng, double k) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  auto unit = [&] {
    while (true) {
      Vec3 v{u(rng), u(rng), u(rng)};
      const double n = norm(v);
      if (n > 0.1 && n < 1.0) return (1.0 / n) * v;
    }
  };
  const Vec3 khat = unit();
  Vec3 e = unit();
  e = e - dot(e, khat) * khat;
  e = (1.0 / norm(e)) * e;
  const Vec3 shat = unit();
  return ScatteringGeometry::make(k * khat, e, k * shat);
}

} // namespace

TEST_SUITE("scattering") {

TEST_CASE("geometry validation") {
  const double k = 1e5;
  CHECK_THROWS_AS(ScatteringGeometry::make({0, 0, k}, {0, 0, 1}, {0, 0, k}),
                  Error); // polarization along k0
  CHECK_THROWS_AS(ScatteringGeometry::make({0, 0, k}, {2, 0, 0}, {0, 0, k}),
                  Error); // not a unit vector
  CHECK_THROWS_AS(ScatteringGeometry::make({0, 0, k}, {1, 0, 0}, {0, 0, 2 * k}),
                  Error); // inelastic
}

TEST_CASE("radiation-zone field: projection, falloff, transversality") {
  const auto& p = kElectron;
  const double w = 1e15, k = w / p.speed_of_light;
  const auto ff = FormFactor::point();
  const auto g = forward_geometry(k);

  // dipole parallel to the observation direction radiates nothing
  const auto Ez = radiation_zone_field(p, ff, {0, 0, 1.0}, g, 1.0);
  CHECK(norm(Ez) <= 1e-15 * p.charge * k * k);

  // perpendicular dipole: |E| = e k^2 |R| / r
  const auto Ex = radiation_zone_field(p, ff, {1e-8, 0, 0}, g, 2.0);
  CHECK(rel_close(norm(Ex), p.charge * k * k * 1e-8 / 2.0, 1e-12));

  // 1/r falloff
  const auto Ex2 = radiation_zone_field(p, ff, {1e-8, 0, 0}, g, 4.0);
  CHECK(rel_close(norm(Ex2), 0.5 * norm(Ex), 1e-12));

  CHECK_THROWS_AS(radiation_zone_field(p, ff, {1, 0, 0}, g, 0.0), Error);

  // transversality across 1000 random geometries
  std::mt19937 rng(20260810);
  for (int i = 0; i < 1000; ++i) {
    const auto rg = random_geometry(rng, k);
    const Vec3 rhat = (1.0 / norm(rg.ks)) * rg.ks;
    const Vec3c Rt{cdouble(1e-8, 3e-9), cdouble(-2e-9, 1e-9),
                   cdouble(4e-9, -9e-10)};
    const auto E = radiation_zone_field(p, ff, Rt, rg, 1.0);
    CHECK(std::abs(dot(rhat, E)) <= 1e-14 * norm(E));
  }
}

TEST_CASE("scattering amplitude pattern") {
  const auto& p = kElectron;
  const double w = 1e15, k = w / p.speed_of_light;
  const auto ff = FormFactor::point();
  const cdouble a = ResponseModel::fo(kElectron).alpha(w);

  // forward: k^2 |f|^2 e^2 alpha along the polarization
  const auto fwd = scattering_amplitude(p, ff, a, forward_geometry(k));
  CHECK(rel_close(std::abs(fwd.x), std::abs(k * k * p.charge * p.charge * a),
                  1e-13));
  CHECK(std::abs(fwd.y) == 0.0);
  CHECK(std::abs(fwd.z) == 0.0);

  // scattering along the polarization direction: nothing radiates
  const auto g_pol = ScatteringGeometry::make({0, 0, k}, {1, 0, 0}, {k, 0, 0});
  const auto f_pol = scattering_amplitude(p, ff, a, g_pol);
  CHECK(norm(f_pol) == 0.0);

  // 90 degrees within the plane orthogonal to the polarization: same
  // magnitude as forward (dipole pattern)
  const auto g_90 = ScatteringGeometry::make({0, 0, k}, {1, 0, 0}, {0, k, 0});
  const auto f_90 = scattering_amplitude(p, ff, a, g_90);
  CHECK(rel_close(norm(f_90), norm(fwd), 1e-13));
}

TEST_CASE("total cross section: Rayleigh fourth power and Thomson plateau") {
  const auto& p = kElectron;
  const auto point = FormFactor::point();
  const auto ald = ResponseModel::ald(p);
  const double w0 = p.resonance_omega0;

  // low frequency: sigma ~ (8pi/3)(w/c)^4 e^4 / (M^2 w0^4)
  const double wl = 1e-3 * w0;
  const double kl = wl / p.speed_of_light;
  const double e2 = p.charge * p.charge;
  const double rayleigh = (8.0 * pi / 3.0) * std::pow(kl, 4) * e2 * e2 /
                          std::pow(p.observed_mass * w0 * w0, 2);
  CHECK(rel_close(sigma_total_integrated(p, point, ald.alpha(wl), wl), rayleigh,
                  1e-5));

  // Thomson window: plateau at (8pi/3) r0^2
  const double r0 = classical_electron_radius(p);
  const double thomson = (8.0 * pi / 3.0) * r0 * r0;
  const double s19 = sigma_total_integrated(p, point, ald.alpha(1e19), 1e19);
  CHECK(rel_close(s19, thomson, 1e-5));
  CHECK(rel_close(thomson, 6.6524380235e-25, 1e-9)); // from the preset constants

  // halving |f|^2 at the evaluation point quarters sigma at fixed alpha
  const cdouble a = ald.alpha(1e19);
  const auto lor = FormFactor::lorentzian(p.cutoff_omega, p.speed_of_light);
  const double f2 = lor.squared(1e19 / p.speed_of_light);
  const double s_cut = sigma_total_integrated(p, lor, a, 1e19);
  CHECK(rel_close(s_cut, f2 * f2 * s19, 1e-12));

  // exponent-2 comparison variant
  const double s_e2 = sigma_total_integrated(p, lor, a, 1e19, 2);
  CHECK(rel_close(s_e2, f2 * s19, 1e-12));
}

TEST_CASE("angular quadrature agrees with the closed form") {
  const auto& p = kElectron;
  const auto fo = ResponseModel::fo(p);
  const auto ald = ResponseModel::ald(p);
  std::mt19937 rng(987654321);
  std::uniform_real_distribution<double> u(12.0, 22.0);
  for (int i = 0; i < 20; ++i) {
    const double w = std::pow(10.0, u(rng));
    const bool use_fo = i % 2 == 0;
    const auto& model = use_fo ? fo : ald;
    const auto ff = use_fo
                        ? FormFactor::lorentzian(p.cutoff_omega, p.speed_of_light)
                        : FormFactor::point();
    const cdouble a = model.alpha(w);
    const double closed = sigma_total_integrated(p, ff, a, w);
    const double quad = sigma_total_quadrature(p, ff, a, w, 1e-9);
    CHECK(rel_close(quad, closed, 1e-9));
  }
}

TEST_CASE("optical theorem: identities and a deliberate mismatch") {
  const auto& p = kElectron;
  const auto fo = ResponseModel::fo(p);
  const auto ald = ResponseModel::ald(p);
  const auto lor = FormFactor::lorentzian(p.cutoff_omega, p.speed_of_light);

  for (double w : make_log_grid(1e12, 1e22, 200).points) {
    const auto rf = optical_theorem_residual(p, lor, fo, w);
    CHECK(rf.residual_relative <= 1e-12);
    CHECK(rf.residual_identity <= 1e-12);
    const auto ra = optical_theorem_residual(p, FormFactor::point(), ald, w);
    CHECK(ra.residual_relative <= 1e-12);
    CHECK(ra.residual_identity <= 1e-12);
  }

  // pairing the point theory with the finite-size factor breaks the theorem
  // by exactly w^2 tau^2 / (1 + w^2 tau^2)
  for (double x : {0.3, 1.0, 4.0}) {
    const double w = x / p.tau_e;
    const auto rm = optical_theorem_residual(p, lor, ald, w);
    const double expected = x * x / (1.0 + x * x);
    CHECK(rel_close(rm.residual_identity, expected, 1e-6));
  }
}

TEST_CASE("refractive-index route to the Rayleigh cross section") {
  const auto& p = kElectron;
  const auto fo = ResponseModel::fo(p);
  const double w = 0.01 * p.resonance_omega0;
  const double direct =
      sigma_total_integrated(p, FormFactor::point(), fo.alpha(w), w);

  const double via18 = rayleigh_cross_section_via_index(p, fo, w, 1e18);
  const double via20 = rayleigh_cross_section_via_index(p, fo, w, 1e20);
  CHECK(rel_close(via18, direct, 1e-6));
  CHECK(rel_close(via20, direct, 1e-6));
  CHECK(rel_close(via18, via20, 1e-12)); // N cancels

  // near resonance the dilute-gas assumption fails loudly
  try {
    (void)rayleigh_cross_section_via_index(p, fo, p.resonance_omega0, 1e19);
    FAIL("expected NotDilute");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotDilute);
  }
}

TEST_CASE("report fields are mutually consistent") {
  const auto& p = kElectron;
  const auto fo = ResponseModel::fo(p);
  const auto rep = optical_theorem_residual(p, fo.form_factor(), fo, 1e15);
  CHECK(rep.omega == 1e15);
  const double k = 1e15 / p.speed_of_light;
  CHECK(rel_close(rep.sigma_total_optical,
                  (4.0 * pi / k) * rep.forward_amplitude.imag(), 1e-15));
  CHECK(rep.residual_relative >= 0.0);
}

} // TEST_SUITE
