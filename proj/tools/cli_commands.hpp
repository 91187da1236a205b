#pragma once
#include <optional>
#include <string>

#include "radosc/params.hpp"

namespace radosc::cli {

/*
  Exit-code contract (frozen for CI):
    0  success (for `verify`: the expected physics verdict holds)
    1  `verify` ran cleanly but the verdict is not the expected one
    2  configuration error (bad flags, bad config file, bad parameters)
    3  numeric failure during evaluation (JSON diagnostic on stderr)
*/

struct GlobalOptions {
  ParamRequest params;
  std::optional<std::string> config_file;
  std::string out_dir = ".";
  unsigned threads = 1;
  int eq13_exponent = 4; // |f(k0)| power in the closed-form cross section
};

/// Params after config-file merge; validates the output directory.
PhysicalParams prepare(GlobalOptions& g);

/// Fingerprint of the fully resolved configuration, stamped into outputs.
std::string config_hash(const GlobalOptions& g, const std::string& command,
                        const std::string& detail);

struct SweepOptions {
  double wmin = 1e13, wmax = 1e18;
  std::size_t points = 2000;
  bool log_spacing = true;
  std::string file = "sweep.csv";
};
int run_sweep(GlobalOptions g, const SweepOptions& o);

struct VerifyOptions {
  std::string model = "both"; // ald | fo | both
  std::string file = "verify.json";
};
int run_verify(GlobalOptions g, const VerifyOptions& o);

struct PolesOptions {
  std::string model = "fo";
  std::string file; // default poles_<model>.json
};
int run_poles(GlobalOptions g, const PolesOptions& o);

struct KKOptions {
  std::string model = "fo";
  double band_lo = 0, band_hi = 0; // default [0.5, 2] omega0
  double grid_lo = 0, grid_hi = 0; // default band +- 3 decades
  int per_decade = 300;
  std::string file; // default kk_<model>.csv
};
int run_kk(GlobalOptions g, const KKOptions& o);

struct TimeDomainOptions {
  std::string model = "fo"; // fo | ald | ald-nonrunaway
  std::string force = "step";
  double f0 = 1.0;
  double omega = 0;
  double t_on = 0;
  double t_end = 0; // default chosen from the model scale
  double dt = 0;
  std::string file = "trajectory.csv";
};
int run_timedomain(GlobalOptions g, const TimeDomainOptions& o);

struct Figure1Options {
  std::size_t points = 1000;
  std::string scale = "e2"; // e2: e^2 alpha [cm^3]; e: e alpha
};
int run_figure1(GlobalOptions g, const Figure1Options& o);

} // namespace radosc::cli
