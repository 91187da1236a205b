#pragma once
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace radosc {

/*
  Gaussian CGS units throughout the library:
    charge [esu], mass [g], length [cm], time [s], angular frequency [rad/s],
    electric field [statvolt/cm], force [dyn], cross section [cm^2].
  The polarizability alpha(omega) relates the displacement amplitude to the
  applied force, so it carries [s^2/g]; the conventional dipole polarizability
  (dipole per field) is e^2 * alpha, with units [cm^3].
*/

/// Oscillator parameters plus derived radiative-reaction quantities.
/// Immutable after construction; validated by make_params().
struct PhysicalParams {
  double charge = 0.0;           ///< e [esu], nonzero, sign free
  double observed_mass = 0.0;    ///< M [g], renormalized (observed) mass
  double speed_of_light = 0.0;   ///< c [cm/s]
  double resonance_omega0 = 0.0; ///< omega_0 [rad/s], >= 0
  double cutoff_omega = 0.0;     ///< Omega [rad/s], form-factor cutoff
  double tau_e = 0.0;            ///< 2 e^2 / (3 M c^3) [s]
  double spring_k = 0.0;         ///< K = M omega_0^2 [g/s^2]
  double bare_mass = 0.0;        ///< m = M (1 - tau_e Omega) [g]
  bool critical_cutoff = false;  ///< Omega == 1/tau_e, bare mass exactly zero
};

/// Cutoff request: either a numeric Omega [rad/s] or the critical value
/// 1/tau_e (which makes the bare mass vanish exactly).
struct CutoffSpec {
  static CutoffSpec critical() { return CutoffSpec{true, 0.0}; }
  static CutoffSpec value(double omega) { return CutoffSpec{false, omega}; }
  bool is_critical = true;
  double omega = 0.0;
};

/// Build a fully derived, validated parameter record.
///
/// Validation: charge != 0, M > 0, c > 0, omega0 >= 0, Omega > 0, all finite.
/// A cutoff with Omega * tau_e > 1 would give a negative bare mass and is
/// rejected (NegativeBareMass).  A numeric Omega within 1e-12 of 1/tau_e is
/// treated as critical, so tau_e * Omega <= 1 holds for every accepted record
/// with equality exactly in the critical case (bare_mass == 0.0 bitwise).
PhysicalParams make_params(double charge, double observed_mass,
                           double speed_of_light, double omega0,
                           CutoffSpec cutoff);

/// Named constant presets.  "electron-cgs" is the free-electron set with the
/// resonance placed at hydrogen's first optical resonance (2.45e15 rad/s).
PhysicalParams preset_params(std::string_view name);

/// r0 = e^2 / (M c^2) [cm].
double classical_electron_radius(const PhysicalParams& p);

/// Parse a "key = value" config file ('#' comments, blank lines ignored).
/// Recognized keys: preset, charge, mass, c, omega0, cutoff (number or
/// "critical"), omega0-units (rad|hz).  Unknown keys are hard errors.
std::map<std::string, std::string> parse_config_file(const std::string& path);

/// Settings shared by the CLI and the config file; flags override file keys.
struct ParamRequest {
  std::optional<std::string> preset;
  std::optional<double> charge;
  std::optional<double> mass;
  std::optional<double> c;
  std::optional<double> omega0;
  std::optional<std::string> cutoff; // "critical" or a number
  bool omega0_in_hz = false;         // interpret omega0 as an ordinary
                                     // frequency and multiply by 2*pi
};

/// Apply config-file keys to a request (keys already present win only if the
/// request slot is empty, i.e. explicit flags take precedence).
void merge_config(ParamRequest& req,
                  const std::map<std::string, std::string>& kv);

/// Resolve a request to parameters: start from the preset (default
/// "electron-cgs"), then apply overrides.
PhysicalParams resolve_params(const ParamRequest& req);

} // namespace radosc
