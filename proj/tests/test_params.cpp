#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>

#include "radosc/errors.hpp"
#include "radosc/grid.hpp"
#include "radosc/params.hpp"

using namespace radosc;

namespace {
constexpr double kE = 4.80320e-10;
constexpr double kM = 9.10938e-28;
constexpr double kC = 2.99792458e10;
constexpr double kW0 = 2.45e15;

bool rel_close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::abs(b);
}
} // namespace

TEST_SUITE("params") {

TEST_CASE("electron preset derives tau_e, K and zero bare mass") {
  const auto p = preset_params("electron-cgs");
  CHECK(p.charge == kE);
  CHECK(p.observed_mass == kM);

  // independent route: tau_e = (2/3) r0 / c with r0 = e^2 / (M c^2)
  const double r0 = kE * kE / (kM * kC * kC);
  const double tau_oracle = 2.0 * r0 / (3.0 * kC);
  CHECK(rel_close(p.tau_e, tau_oracle, 1e-15));
  CHECK(rel_close(p.tau_e, 6.2664150147e-24, 1e-9));

  CHECK(p.spring_k == kM * kW0 * kW0);
  CHECK(p.bare_mass == 0.0); // exactly, by construction of the critical cutoff
  CHECK(p.critical_cutoff);
  CHECK(rel_close(p.cutoff_omega, 1.5958087641e23, 1e-9));
}

TEST_CASE("numeric cutoff sets the bare mass linearly") {
  const auto pc = preset_params("electron-cgs");
  const auto p = make_params(kE, kM, kC, kW0, CutoffSpec::value(0.5 / pc.tau_e));
  CHECK(rel_close(p.bare_mass, 0.5 * kM, 1e-12));
  CHECK_FALSE(p.critical_cutoff);
}

TEST_CASE("cutoff beyond 1/tau_e is rejected") {
  const auto pc = preset_params("electron-cgs");
  try {
    make_params(kE, kM, kC, kW0, CutoffSpec::value(2.0 / pc.tau_e));
    FAIL("expected NegativeBareMass");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NegativeBareMass);
  }
}

TEST_CASE("validation rejects bad inputs") {
  auto code = [](auto fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::BadConfig;
  };
  CHECK(code([] { make_params(kE, -1.0, kC, kW0, CutoffSpec::critical()); }) ==
        ErrorCode::NonPositiveMass);
  CHECK(code([] { make_params(0.0, kM, kC, kW0, CutoffSpec::critical()); }) ==
        ErrorCode::NonFiniteInput);
  CHECK(code([] { make_params(kE, kM, kC, -1.0, CutoffSpec::critical()); }) ==
        ErrorCode::NonFiniteInput);
  CHECK(code([] {
          make_params(kE, kM, kC, std::nan(""), CutoffSpec::critical());
        }) == ErrorCode::NonFiniteInput);
  CHECK_THROWS_AS((void)preset_params("no-such-preset"), Error);
}

TEST_CASE("classical electron radius") {
  const auto p = preset_params("electron-cgs");
  CHECK(rel_close(classical_electron_radius(p), 2.81793594018e-13, 1e-9));

  const auto p2e = make_params(2 * kE, kM, kC, kW0, CutoffSpec::critical());
  CHECK(rel_close(classical_electron_radius(p2e),
                  4.0 * classical_electron_radius(p), 1e-15));
  const auto p2m = make_params(kE, 2 * kM, kC, kW0, CutoffSpec::critical());
  CHECK(rel_close(classical_electron_radius(p2m),
                  0.5 * classical_electron_radius(p), 1e-15));
}

TEST_CASE("construction is deterministic and pure") {
  const auto a = make_params(kE, kM, kC, kW0, CutoffSpec::critical());
  const auto b = make_params(kE, kM, kC, kW0, CutoffSpec::critical());
  CHECK(a.tau_e == b.tau_e);
  CHECK(a.spring_k == b.spring_k);
  CHECK(a.cutoff_omega == b.cutoff_omega);
  CHECK(a.bare_mass == b.bare_mass);
}

TEST_CASE("spring constant reproduces omega0^2 across 14 decades") {
  for (double w0 = 1e6; w0 <= 1.001e20; w0 *= 10.0) {
    const auto p = make_params(kE, kM, kC, w0, CutoffSpec::critical());
    CHECK(rel_close(p.spring_k / p.observed_mass, w0 * w0, 1e-15));
  }
}

TEST_CASE("tau_e * Omega <= 1 with equality exactly at the critical cutoff") {
  const auto pc = preset_params("electron-cgs");
  for (double frac : {1e-6, 0.1, 0.5, 0.9, 0.999, 1.0}) {
    const auto p =
        make_params(kE, kM, kC, kW0, CutoffSpec::value(frac / pc.tau_e));
    CHECK(p.tau_e * p.cutoff_omega <= 1.0 + 1e-15);
    CHECK(p.critical_cutoff == (std::abs(frac - 1.0) <= 1e-12));
    if (p.critical_cutoff) CHECK(p.bare_mass == 0.0);
  }
}

TEST_CASE("config file parsing and precedence") {
  const std::string path = "radosc_test_config.tmp";
  {
    std::ofstream f(path);
    f << "# comment\n"
      << "preset = electron-cgs\n"
      << "omega0 = 1.0e15\n";
  }
  ParamRequest req;
  merge_config(req, parse_config_file(path));
  CHECK(resolve_params(req).resonance_omega0 == 1.0e15);

  // explicit flag wins over the file
  ParamRequest req2;
  req2.omega0 = 3.0e15;
  merge_config(req2, parse_config_file(path));
  CHECK(resolve_params(req2).resonance_omega0 == 3.0e15);

  {
    std::ofstream f(path);
    f << "not_a_key = 1\n";
  }
  CHECK_THROWS_AS((void)parse_config_file(path), Error);
  {
    std::ofstream f(path);
    f << "omega0\n";
  }
  CHECK_THROWS_AS((void)parse_config_file(path), Error);
  std::remove(path.c_str());
}

TEST_CASE("omega0 given in Hz is converted to rad/s") {
  ParamRequest req;
  req.omega0 = 2.45e15;
  req.omega0_in_hz = true;
  const auto p = resolve_params(req);
  CHECK(rel_close(p.resonance_omega0, 2.0 * 3.14159265358979324 * 2.45e15,
                  1e-12));
}

TEST_CASE("frequency grids validate ordering and positivity") {
  const auto g = make_log_grid(1e10, 1e20, 11);
  CHECK(g.points.size() == 11);
  CHECK(g.front() == 1e10);
  CHECK(g.back() == 1e20);
  for (std::size_t i = 1; i < g.size(); ++i)
    CHECK(g.points[i] > g.points[i - 1]);
  CHECK_THROWS_AS((void)make_log_grid(0.0, 1e5, 4), Error);
  CHECK_THROWS_AS((void)make_log_grid(1e5, 1e4, 4), Error);
  CHECK_THROWS_AS((void)make_linear_grid(1.0, 2.0, 1), Error);

  FrequencyGrid bad;
  bad.points = {1.0, 1.0};
  CHECK_THROWS_AS(validate_grid(bad), Error);
}

} // TEST_SUITE
