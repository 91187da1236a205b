#pragma once
#include <functional>
#include <optional>
#include <vector>

#include "radosc/grid.hpp"
#include "radosc/response.hpp"

namespace radosc {

/*
  Complex-plane diagnostics: where are the poles of alpha, does the crossing
  relation alpha(-w) = alpha*(w) hold, and can Re alpha be reconstructed from
  Im alpha by a dispersion (Kramers-Kronig) integral?  A response is causal
  exactly when alpha is analytic in the upper half plane, i.e. when every
  pole sits below the real axis.
*/

enum class HalfPlane { upper, lower, real_axis };

struct Pole {
  cdouble location; // [rad/s]
  cdouble residue;  // residue of alpha at the pole
  HalfPlane half_plane = HalfPlane::real_axis;
};

struct PoleSet {
  std::vector<Pole> poles;
  bool causal = false; // no upper-half-plane poles
  /// FO numerator zero at -i/tau_e (metadata, not a pole).
  std::optional<cdouble> numerator_zero;
};

/// All denominator roots of a rational model (point, critical, or general
/// kernel with Lorentzian cutoff).  Roots come from the companion matrix of
/// the cutoff-time-scaled polynomial (x = omega tau_e) and are polished by
/// Newton iteration, giving backward error <= 1e-12 of the coefficient
/// scale.  Roots with |Im| < 1e-6 |location| are flagged real_axis rather
/// than classified.  Tabulated form factors are not rational:
/// NonRationalModel.
PoleSet find_poles(const ResponseModel& model);

/// max over the grid of |alpha(-w) - alpha*(w)| / |alpha(w)|.
double crossing_audit(const ResponseModel& model, const FrequencyGrid& grid);

/// Same audit for an arbitrary response function (test fixtures).
double crossing_audit_fn(const std::function<cdouble(cdouble)>& alpha,
                         const FrequencyGrid& grid);

struct KKBand {
  double lo = 0, hi = 0; // [rad/s]
};

struct KKReport {
  FrequencyGrid grid;
  KKBand band;
  std::vector<double> eval_omega;
  std::vector<double> re_direct;
  std::vector<double> re_reconstructed;
  std::vector<double> rel_err; // |rec - direct| / |alpha(w)|
  double max_relative_error = 0;
};

/// Sampling grid for the dispersion integral: a base log grid (>= 200
/// points/decade) plus a graded refinement across the resonance, where Im
/// alpha is a Lorentzian of fractional width ~ gamma/omega0 that no plain
/// log grid can resolve.
FrequencyGrid make_kk_grid(const PhysicalParams& p, double lo, double hi,
                           int points_per_decade = 300);

/// Re alpha(w) from Im alpha by the folded principal-value integral
///   Re alpha(w) = (2/pi) P int_0^inf w' Im alpha(w') / (w'^2 - w^2) dw'.
/// Grid quadrature with singularity subtraction; the tails beyond the grid
/// use power-law asymptotics of Im alpha fitted to the outer decades.
/// Valid for w >= 0 strictly inside the grid (w = 0 allowed).
double kk_reconstruct_at(const ResponseModel& model, const FrequencyGrid& grid,
                         double w);

/// Run the reconstruction across eval_points log-spaced band points (an even
/// count, so none lands exactly on the resonance, where Re alpha passes
/// through zero and a relative comparison is meaningless).  The grid must
/// bracket the band by >= 1 decade on each side (BandNotCovered) and average
/// >= 200 points/decade (InsufficientResolution).
KKReport kk_reconstruct(const ResponseModel& model, const FrequencyGrid& grid,
                        KKBand band, std::size_t eval_points = 32);

/// Same machinery for an arbitrary response function on the real axis
/// (synthetic fixtures with known pole layouts).
KKReport kk_reconstruct_fn(const std::function<cdouble(double)>& alpha,
                           const FrequencyGrid& grid, KKBand band,
                           std::size_t eval_points = 32);

} // namespace radosc
