#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "cli_commands.hpp"
#include "radosc/errors.hpp"

using namespace radosc;

int main(int argc, char** argv) {
  CLI::App app{"radosc: radiative-reaction response of a charged oscillator:\n"
               "polarizabilities, scattering cross sections, optical-theorem\n"
               "and causality audits, and time-domain dynamics (Gaussian CGS)"};
  app.require_subcommand(1);
  app.fallthrough();

  cli::GlobalOptions g;
  std::string preset, cutoff, omega0_units = "rad";
  double charge = 0, mass = 0, c_light = 0, omega0 = 0;

  app.add_option("--preset", preset, "named constant preset (electron-cgs)");
  app.add_option("--config", g.config_file, "key = value parameter file");
  app.add_option("--charge", charge, "charge e [esu]");
  app.add_option("--mass", mass, "observed mass M [g]");
  app.add_option("--c", c_light, "speed of light [cm/s]");
  app.add_option("--omega0", omega0, "resonance frequency [rad/s or Hz]");
  app.add_option("--cutoff", cutoff, "form-factor cutoff [rad/s] or 'critical'");
  app.add_option("--omega0-units", omega0_units,
                 "interpret --omega0 as rad (default) or hz")
      ->check(CLI::IsMember({"rad", "hz"}));
  app.add_option("--out", g.out_dir, "output directory");
  app.add_option("--threads", g.threads, "worker threads for sweeps");
  app.add_option("--eq13-exponent", g.eq13_exponent,
                 "|f(k0)| power in the closed-form cross section")
      ->check(CLI::IsMember({2, 4}));

  cli::SweepOptions sw;
  auto* sweep = app.add_subcommand("sweep", "tabulate both polarizabilities");
  sweep->fallthrough();
  sweep->add_option("--wmin", sw.wmin, "grid start [rad/s]");
  sweep->add_option("--wmax", sw.wmax, "grid end [rad/s]");
  sweep->add_option("--points", sw.points, "grid size");
  sweep->add_flag("!--linear", sw.log_spacing, "linear instead of log spacing");
  sweep->add_option("--file", sw.file, "output CSV name");

  cli::VerifyOptions vf;
  auto* verify = app.add_subcommand(
      "verify", "optical theorem + crossing + causality + dispersion report");
  verify->fallthrough();
  verify->add_option("--model", vf.model, "ald | fo | both");
  verify->add_option("--file", vf.file, "output JSON name");

  cli::PolesOptions po;
  auto* poles = app.add_subcommand("poles", "complex-plane pole classification");
  poles->fallthrough();
  poles->add_option("--model", po.model, "ald | fo");
  poles->add_option("--file", po.file, "output JSON name");

  cli::KKOptions kk;
  auto* kkc = app.add_subcommand("kk", "dispersion reconstruction of Re alpha");
  kkc->fallthrough();
  kkc->add_option("--model", kk.model, "ald | fo");
  kkc->add_option("--band-lo", kk.band_lo, "band start [rad/s]");
  kkc->add_option("--band-hi", kk.band_hi, "band end [rad/s]");
  kkc->add_option("--wmin", kk.grid_lo, "grid start [rad/s]");
  kkc->add_option("--wmax", kk.grid_hi, "grid end [rad/s]");
  kkc->add_option("--per-decade", kk.per_decade, "grid density");
  kkc->add_option("--file", kk.file, "output CSV name");

  cli::TimeDomainOptions td;
  auto* tdc = app.add_subcommand("timedomain", "integrate an equation of motion");
  tdc->fallthrough();
  tdc->add_option("--model", td.model, "fo | ald | ald-nonrunaway");
  tdc->add_option("--force", td.force, "step | sin | impulse | zero");
  tdc->add_option("--f0", td.f0, "force amplitude [dyn] (impulse: [dyn s])");
  tdc->add_option("--omega", td.omega, "drive frequency [rad/s]");
  tdc->add_option("--t-on", td.t_on, "force onset [s]");
  tdc->add_option("--t-end", td.t_end, "end time [s]");
  tdc->add_option("--dt", td.dt, "step [s]");
  tdc->add_option("--file,--out-file", td.file, "output CSV name");

  cli::Figure1Options f1;
  auto* fig = app.add_subcommand(
      "figure1", "two-band comparison of the point and finite-size theories");
  fig->fallthrough();
  fig->add_option("--points", f1.points, "points per band");
  fig->add_option("--scale", f1.scale, "e2 (dipole polarizability) | e");

  CLI11_PARSE(app, argc, argv);

  if (!preset.empty()) g.params.preset = preset;
  if (app.count("--charge")) g.params.charge = charge;
  if (app.count("--mass")) g.params.mass = mass;
  if (app.count("--c")) g.params.c = c_light;
  if (app.count("--omega0")) g.params.omega0 = omega0;
  if (app.count("--cutoff")) g.params.cutoff = cutoff;
  g.params.omega0_in_hz = omega0_units == "hz";

  try {
    if (*sweep) return cli::run_sweep(g, sw);
    if (*verify) return cli::run_verify(g, vf);
    if (*poles) return cli::run_poles(g, po);
    if (*kkc) return cli::run_kk(g, kk);
    if (*tdc) return cli::run_timedomain(g, td);
    if (*fig) return cli::run_figure1(g, f1);
  } catch (const Error& e) {
    nlohmann::json diag;
    diag["error"] = error_code_name(e.code());
    diag["what"] = e.what();
    std::cerr << diag.dump() << std::endl;
    return is_config_error(e.code()) ? 2 : 3;
  } catch (const std::exception& e) {
    nlohmann::json diag;
    diag["error"] = "Unexpected";
    diag["what"] = e.what();
    std::cerr << diag.dump() << std::endl;
    return 3;
  }
  return 2;
}
