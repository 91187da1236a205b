#include "radosc/params.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "radosc/errors.hpp"

namespace radosc {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonPositiveMass: return "NonPositiveMass";
    case ErrorCode::NegativeBareMass: return "NegativeBareMass";
    case ErrorCode::NonFiniteInput: return "NonFiniteInput";
    case ErrorCode::BadConfig: return "BadConfig";
    case ErrorCode::PoleEvaluation: return "PoleEvaluation";
    case ErrorCode::WrongCutoff: return "WrongCutoff";
    case ErrorCode::UnsupportedFormFactor: return "UnsupportedFormFactor";
    case ErrorCode::NegativeTime: return "NegativeTime";
    case ErrorCode::InconsistentWavevector: return "InconsistentWavevector";
    case ErrorCode::ZeroRadius: return "ZeroRadius";
    case ErrorCode::NotDilute: return "NotDilute";
    case ErrorCode::NonRationalModel: return "NonRationalModel";
    case ErrorCode::BandNotCovered: return "BandNotCovered";
    case ErrorCode::InsufficientResolution: return "InsufficientResolution";
    case ErrorCode::StepTooLarge: return "StepTooLarge";
    case ErrorCode::UnsupportedOmega0: return "UnsupportedOmega0";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::TooShort: return "TooShort";
  }
  return "Unknown";
}

bool is_config_error(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonPositiveMass:
    case ErrorCode::NegativeBareMass:
    case ErrorCode::NonFiniteInput:
    case ErrorCode::BadConfig:
      return true;
    default:
      return false;
  }
}

PhysicalParams make_params(double charge, double observed_mass,
                           double speed_of_light, double omega0,
                           CutoffSpec cutoff) {
  if (!std::isfinite(charge) || !std::isfinite(observed_mass) ||
      !std::isfinite(speed_of_light) || !std::isfinite(omega0) ||
      (!cutoff.is_critical && !std::isfinite(cutoff.omega)))
    fail(ErrorCode::NonFiniteInput, "make_params: non-finite input");
  if (charge == 0.0)
    fail(ErrorCode::NonFiniteInput, "make_params: charge must be nonzero");
  if (observed_mass <= 0.0)
    fail(ErrorCode::NonPositiveMass, "make_params: observed mass must be > 0");
  if (speed_of_light <= 0.0)
    fail(ErrorCode::NonFiniteInput, "make_params: c must be > 0");
  if (omega0 < 0.0)
    fail(ErrorCode::NonFiniteInput, "make_params: omega0 must be >= 0");

  PhysicalParams p;
  p.charge = charge;
  p.observed_mass = observed_mass;
  p.speed_of_light = speed_of_light;
  p.resonance_omega0 = omega0;
  p.tau_e = 2.0 * charge * charge /
            (3.0 * observed_mass * speed_of_light * speed_of_light * speed_of_light);
  p.spring_k = observed_mass * omega0 * omega0;

  if (cutoff.is_critical) {
    p.cutoff_omega = 1.0 / p.tau_e;
    p.bare_mass = 0.0; // exact by definition of the critical cutoff
    p.critical_cutoff = true;
  } else {
    if (cutoff.omega <= 0.0)
      fail(ErrorCode::NonFiniteInput, "make_params: cutoff must be > 0");
    const double x = cutoff.omega * p.tau_e;
    if (std::abs(x - 1.0) <= 1e-12) {
      // numerically indistinguishable from critical: snap, keep m == 0 exact
      p.cutoff_omega = 1.0 / p.tau_e;
      p.bare_mass = 0.0;
      p.critical_cutoff = true;
    } else if (x > 1.0) {
      fail(ErrorCode::NegativeBareMass,
           "make_params: cutoff beyond 1/tau_e gives a negative bare mass");
    } else {
      p.cutoff_omega = cutoff.omega;
      p.bare_mass = observed_mass * (1.0 - x);
      p.critical_cutoff = false;
    }
  }
  return p;
}

PhysicalParams preset_params(std::string_view name) {
  if (name == "electron-cgs") {
    return make_params(4.80320e-10, 9.10938e-28, 2.99792458e10, 2.45e15,
                       CutoffSpec::critical());
  }
  fail(ErrorCode::BadConfig, "unknown preset: " + std::string(name));
}

double classical_electron_radius(const PhysicalParams& p) {
  return p.charge * p.charge /
         (p.observed_mass * p.speed_of_light * p.speed_of_light);
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    fail(ErrorCode::BadConfig, "config key '" + key + "': bad number '" + v + "'");
  }
}

} // namespace

std::map<std::string, std::string> parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::BadConfig, "cannot open config file: " + path);

  static const char* known[] = {"preset", "charge", "mass",
                                "c",      "omega0", "cutoff",
                                "omega0-units"};
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      fail(ErrorCode::BadConfig, path + ":" + std::to_string(lineno) +
                                     ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok)
      fail(ErrorCode::BadConfig, path + ":" + std::to_string(lineno) +
                                     ": unknown key '" + key + "'");
    if (kv.count(key))
      fail(ErrorCode::BadConfig, path + ":" + std::to_string(lineno) +
                                     ": duplicate key '" + key + "'");
    kv[key] = val;
  }
  return kv;
}

void merge_config(ParamRequest& req,
                  const std::map<std::string, std::string>& kv) {
  auto get = [&](const char* k) -> const std::string* {
    auto it = kv.find(k);
    return it == kv.end() ? nullptr : &it->second;
  };
  if (const auto* v = get("preset"); v && !req.preset) req.preset = *v;
  if (const auto* v = get("charge"); v && !req.charge)
    req.charge = parse_double("charge", *v);
  if (const auto* v = get("mass"); v && !req.mass)
    req.mass = parse_double("mass", *v);
  if (const auto* v = get("c"); v && !req.c) req.c = parse_double("c", *v);
  if (const auto* v = get("omega0"); v && !req.omega0)
    req.omega0 = parse_double("omega0", *v);
  if (const auto* v = get("cutoff"); v && !req.cutoff) req.cutoff = *v;
  if (const auto* v = get("omega0-units")) {
    if (*v == "hz")
      req.omega0_in_hz = true;
    else if (*v != "rad")
      fail(ErrorCode::BadConfig, "omega0-units must be 'rad' or 'hz'");
  }
}

PhysicalParams resolve_params(const ParamRequest& req) {
  const PhysicalParams base = preset_params(req.preset.value_or("electron-cgs"));
  const double charge = req.charge.value_or(base.charge);
  const double mass = req.mass.value_or(base.observed_mass);
  const double c = req.c.value_or(base.speed_of_light);
  double omega0 = req.omega0.value_or(base.resonance_omega0);
  if (req.omega0_in_hz && req.omega0) omega0 *= 2.0 * std::numbers::pi;

  CutoffSpec cutoff = CutoffSpec::critical();
  if (req.cutoff && *req.cutoff != "critical")
    cutoff = CutoffSpec::value(parse_double("cutoff", *req.cutoff));
  return make_params(charge, mass, c, omega0, cutoff);
}

} // namespace radosc
