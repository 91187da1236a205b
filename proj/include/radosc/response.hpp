#pragma once
#include <complex>
#include <optional>
#include <vector>

#include "radosc/detail/vec3.hpp"
#include "radosc/params.hpp"

namespace radosc {

using cdouble = std::complex<double>;

/*
  Closed-form polarizabilities of a charged harmonic oscillator with
  radiative reaction, on real and complex frequency arguments:

    point electron (third-derivative reaction force):
        alpha(w) = (1/M) / (w0^2 - w^2 - i w^3 tau_e)

    finite-size electron, memory-kernel drag, critical cutoff Omega = 1/tau_e:
        alpha(w) = (1/M) (1 - i w tau_e) / (w0^2 - w^2 - i gamma w),
        gamma = w0^2 tau_e

    general kernel:
        alpha(w) = 1 / (-m w^2 - i w mu~(w) + K)

  with mu~(w) the half-line Fourier transform of the friction kernel mu(t).
  For the Lorentzian form factor |f(k)|^2 = Omega^2/(Omega^2 + c^2 k^2),

        mu~(w)  = M Omega^2 tau_e * w / (w + i Omega)
        mu(t)   = M Omega^2 tau_e [ 2 delta(t) - Omega exp(-Omega t) ],

  a positive-real pair (Re mu~ >= 0 on the real axis, mu~(0) = 0).  The
  half-line transform assigns the t = 0 delta endpoint half weight; this
  convention is what makes the pair consistent and is pinned by tests.
*/

// ---------------------------------------------------------------------------
// form factor
// ---------------------------------------------------------------------------

enum class FormFactorKind { point, lorentzian_cutoff, tabulated };

/// |f(k)|^2 of the rigid charge distribution, normalized to f(0) = 1.
class FormFactor {
public:
  static FormFactor point();
  /// |f(k)|^2 = Omega^2 / (Omega^2 + c^2 k^2).
  static FormFactor lorentzian(double cutoff_omega, double speed_of_light);
  /// Table of (k [1/cm], |f|^2), strictly increasing in k, non-increasing in
  /// |f|^2, first entry at k = 0 with |f|^2 = 1.  Evaluation interpolates
  /// linearly and extends beyond the table with a 1/k^2 tail.
  static FormFactor tabulated(std::vector<std::pair<double, double>> table);

  FormFactorKind kind() const { return kind_; }
  double cutoff_omega() const { return cutoff_omega_; }

  /// |f(k)|^2 at wavenumber magnitude k [1/cm].
  double squared(double k) const;
  /// |f(k)| (real, nonnegative; the phase of f is not modeled).
  double value(double k) const;

private:
  FormFactorKind kind_ = FormFactorKind::point;
  double cutoff_omega_ = 0.0; // lorentzian only
  double c_ = 0.0;            // lorentzian only (converts k -> omega)
  std::vector<std::pair<double, double>> table_;
};

// ---------------------------------------------------------------------------
// memory kernel
// ---------------------------------------------------------------------------

/// Exact representation of the friction kernel
///   mu(t) = 2 w_inst delta(t) - sum_i a_i exp(-r_i t),
/// where w_inst [g/s] already carries the half-endpoint convention (its
/// contribution to mu~ is exactly w_inst).
struct MemoryKernel {
  struct ExpTerm {
    double amplitude; // a_i [g/s^2]
    double rate;      // r_i [1/s]
  };
  double instantaneous_weight = 0.0;
  std::vector<ExpTerm> exponential_terms;
};

/// Kernel of the Lorentzian form factor with cutoff Omega:
/// w_inst = M Omega^2 tau_e, one exponential term (M Omega^3 tau_e, Omega).
MemoryKernel kernel_from_lorentzian(const PhysicalParams& p, double cutoff_omega);

/// mu~(omega) = w_inst - sum_i a_i / (r_i - i omega).  Analytic everywhere
/// except the lower-half-plane points omega = -i r_i.
cdouble mu_tilde(const MemoryKernel& k, cdouble omega);

/// Smooth part of mu(t) at t >= 0 (the delta weight is returned separately,
/// it is not a density).  Throws NegativeTime for t < 0.
struct KernelSample {
  double smooth;       // -sum a_i exp(-r_i t)  [g/s^2]
  double delta_weight; // w_inst [g/s]
};
KernelSample kernel_time_domain(const MemoryKernel& k, double t);

// ---------------------------------------------------------------------------
// polarizabilities
// ---------------------------------------------------------------------------

/// Point-electron closed form.  Throws PoleEvaluation within ~1e-8 of a
/// denominator root (one of which lies in the upper half plane).
cdouble alpha_ald(const PhysicalParams& p, cdouble zeta);

/// Finite-size closed form at the critical cutoff.  Requires params built
/// with the critical cutoff (WrongCutoff otherwise).  Analytic for
/// Im zeta > 0.
cdouble alpha_fo(const PhysicalParams& p, cdouble zeta);

/// General kernel, alpha = 1 / (-m w^2 - i w mu~(w) + K).  For the
/// Lorentzian form factor this is evaluated in rational form and is defined
/// for any complex zeta off the denominator roots.  For tabulated form
/// factors only real zeta is supported (UnsupportedFormFactor otherwise);
/// Im mu~ is then reconstructed from Re mu~ by a dispersion integral.
cdouble alpha_general(const PhysicalParams& p, const FormFactor& ff, cdouble zeta);

/// mu~ on the real axis for a tabulated form factor: Re mu~ from the
/// cross-section identity Re mu~ = (2 e^2 w^2 / 3 c^3) |f(w/c)|^2, Im mu~
/// from a principal-value dispersion integral over Re mu~ (mu~ is
/// positive-real, so it is fixed by its real part up to a constant that
/// vanishes with mu~(0) = 0).
cdouble mu_tilde_tabulated(const PhysicalParams& p, const FormFactor& ff, double omega);

// ---------------------------------------------------------------------------
// response model
// ---------------------------------------------------------------------------

enum class ModelKind { ald, fo_critical, general_kernel };

/// A chosen theory bound to parameters; evaluates alpha on real and complex
/// frequencies.  Values are immutable and freely shareable across threads.
class ResponseModel {
public:
  static ResponseModel ald(const PhysicalParams& p);
  static ResponseModel fo(const PhysicalParams& p); // requires critical cutoff
  static ResponseModel general(const PhysicalParams& p, FormFactor ff);

  ModelKind kind() const { return kind_; }
  const PhysicalParams& params() const { return params_; }
  const FormFactor& form_factor() const { return ff_; }
  /// Derived kernel (non-ALD models with a Lorentzian cutoff).
  const std::optional<MemoryKernel>& kernel() const { return kernel_; }

  cdouble alpha(cdouble zeta) const;

  /// Form factor the model pairs with in the optical-theorem identity:
  /// |f| = 1 for the point-electron model, the model's own otherwise.
  double form_factor_squared(double k) const;

  const char* name() const;

private:
  ResponseModel() = default;
  ModelKind kind_ = ModelKind::ald;
  PhysicalParams params_;
  FormFactor ff_ = FormFactor::point();
  std::optional<MemoryKernel> kernel_;
};

// ---------------------------------------------------------------------------
// driving force
// ---------------------------------------------------------------------------

/// Force phasor exerted by a plane wave on the extended charge:
///   F(t) = e f(k0) E0 exp(-i omega t),
/// with omega = c |k0| required (InconsistentWavevector otherwise).
Vec3c driving_force(const PhysicalParams& p, const FormFactor& ff, Vec3 E0,
                    Vec3 k0, double omega, double t);

} // namespace radosc
