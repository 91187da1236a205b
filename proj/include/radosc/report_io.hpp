#pragma once
#include <string>
#include <vector>

#include "radosc/causality.hpp"
#include "radosc/scattering.hpp"
#include "radosc/timedomain.hpp"

namespace radosc {

/*
  File emission.  All CSV files carry exactly one '#' header line with the
  column names, units, and a configuration hash so outputs are diffable and
  self-describing; floats are written with %.17g so identical runs are
  byte-identical.
*/

/// One row of a model-comparison sweep.
struct SweepRow {
  double omega = 0;
  cdouble alpha_ald;
  cdouble alpha_fo;
  double rel_diff = 0; // |alpha_fo - alpha_ald| / |alpha_ald|
};

void write_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows,
                     const std::string& config_hash);

void write_scattering_csv(const std::string& path,
                          const std::vector<ScatteringReport>& rows,
                          const std::vector<cdouble>& alpha_values,
                          const std::string& config_hash);

std::string scattering_summary_json(const std::string& model,
                                    const std::string& form_factor,
                                    const FrequencyGrid& grid,
                                    double max_residual);

std::string poles_json(const std::string& model, const PoleSet& ps);

void write_kk_csv(const std::string& path, const KKReport& report,
                  const std::string& config_hash);

void write_trajectory_csv(const std::string& path, const Trajectory& traj,
                          const std::string& config_hash);

std::string verdict_json(const StabilityVerdict& v, const Trajectory& traj);

void write_text_file(const std::string& path, const std::string& content);

} // namespace radosc
