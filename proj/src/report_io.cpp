#include "radosc/report_io.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

#include "radosc/detail/numerics.hpp"
#include "radosc/errors.hpp"

namespace radosc {

using detail::fmt_g17;
using nlohmann::json;

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::BadConfig, "cannot open output file: " + path);
  return out;
}

const char* half_plane_name(HalfPlane h) {
  switch (h) {
    case HalfPlane::upper: return "upper";
    case HalfPlane::lower: return "lower";
    case HalfPlane::real_axis: return "real-axis";
  }
  return "?";
}

} // namespace

void write_text_file(const std::string& path, const std::string& content) {
  auto out = open_out(path);
  out << content;
}

void write_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows,
                     const std::string& config_hash) {
  auto out = open_out(path);
  out << "# omega[rad/s],re_alpha_ald[s^2/g],im_alpha_ald[s^2/g],"
         "re_alpha_fo[s^2/g],im_alpha_fo[s^2/g],rel_diff[1]"
         " config=" << config_hash << "\n";
  for (const auto& r : rows) {
    out << fmt_g17(r.omega) << ',' << fmt_g17(r.alpha_ald.real()) << ','
        << fmt_g17(r.alpha_ald.imag()) << ',' << fmt_g17(r.alpha_fo.real())
        << ',' << fmt_g17(r.alpha_fo.imag()) << ',' << fmt_g17(r.rel_diff)
        << '\n';
  }
}

void write_scattering_csv(const std::string& path,
                          const std::vector<ScatteringReport>& rows,
                          const std::vector<cdouble>& alpha_values,
                          const std::string& config_hash) {
  if (rows.size() != alpha_values.size())
    fail(ErrorCode::BadConfig, "scattering csv: size mismatch");
  auto out = open_out(path);
  out << "# omega[rad/s],re_alpha[s^2/g],im_alpha[s^2/g],"
         "sigma_integrated[cm^2],sigma_optical[cm^2],residual[1]"
         " config=" << config_hash << "\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    out << fmt_g17(r.omega) << ',' << fmt_g17(alpha_values[i].real()) << ','
        << fmt_g17(alpha_values[i].imag()) << ','
        << fmt_g17(r.sigma_total_integrated) << ','
        << fmt_g17(r.sigma_total_optical) << ','
        << fmt_g17(r.residual_relative) << '\n';
  }
}

std::string scattering_summary_json(const std::string& model,
                                    const std::string& form_factor,
                                    const FrequencyGrid& grid,
                                    double max_residual) {
  json j;
  j["model"] = model;
  j["form_factor"] = form_factor;
  j["grid"] = {{"min", grid.front()},
               {"max", grid.back()},
               {"points", grid.size()},
               {"spacing", grid.spacing == GridSpacing::logarithmic ? "log"
                           : grid.spacing == GridSpacing::linear    ? "linear"
                                                                    : "custom"}};
  j["max_residual"] = max_residual;
  return j.dump(2) + "\n";
}

std::string poles_json(const std::string& model, const PoleSet& ps) {
  json roots = json::array();
  for (const auto& q : ps.poles) {
    roots.push_back({{"re", q.location.real()},
                     {"im", q.location.imag()},
                     {"residue_re", q.residue.real()},
                     {"residue_im", q.residue.imag()},
                     {"half_plane", half_plane_name(q.half_plane)}});
  }
  json j;
  j["model"] = model;
  j["roots"] = roots;
  j["causal"] = ps.causal;
  if (ps.numerator_zero)
    j["numerator_zero"] = {{"re", ps.numerator_zero->real()},
                           {"im", ps.numerator_zero->imag()}};
  return j.dump(2) + "\n";
}

void write_kk_csv(const std::string& path, const KKReport& report,
                  const std::string& config_hash) {
  auto out = open_out(path);
  out << "# omega[rad/s],re_direct[s^2/g],re_reconstructed[s^2/g],rel_err[1]"
         " config=" << config_hash << "\n";
  for (std::size_t i = 0; i < report.eval_omega.size(); ++i) {
    out << fmt_g17(report.eval_omega[i]) << ',' << fmt_g17(report.re_direct[i])
        << ',' << fmt_g17(report.re_reconstructed[i]) << ','
        << fmt_g17(report.rel_err[i]) << '\n';
  }
}

void write_trajectory_csv(const std::string& path, const Trajectory& traj,
                          const std::string& config_hash) {
  auto out = open_out(path);
  const bool fo = traj.model == TrajectoryModel::fo;
  out << "# t[s],R[cm],V[cm/s]," << (fo ? "y[cm/s]" : "A[cm/s^2]")
      << " config=" << config_hash << "\n";
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    out << fmt_g17(traj.times[i]) << ',' << fmt_g17(traj.R[i]) << ','
        << fmt_g17(traj.V[i]) << ',' << fmt_g17(traj.aux[i]) << '\n';
  }
}

std::string verdict_json(const StabilityVerdict& v, const Trajectory& traj) {
  json j;
  j["runaway"] = v.runaway;
  j["growth_rate"] = v.growth_rate;
  j["fit_r2"] = v.fit_r2;
  j["truncated"] = traj.truncated;
  j["samples"] = traj.times.size();
  if (v.matched_root)
    j["matched_root"] = {{"re", v.matched_root->real()},
                         {"im", v.matched_root->imag()}};
  return j.dump(2) + "\n";
}

} // namespace radosc
