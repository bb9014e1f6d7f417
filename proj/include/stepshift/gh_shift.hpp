#pragma once

#include "stepshift/scattering.hpp"

// Longitudinal Goos-Hänchen shift of the totally reflected beam, computed
// three ways and cross-checked:
//   evanescent-flux route   S_y^e  = ∫_0^∞ j_y^t dz / |j_z^r|
//   interference route      S_y^ir = <P_ir> / j_z^in   (lambda_z-averaged)
//   stationary-phase route  S_y^p  = -d(arg r)/dp_y    (closed form)
// The three satisfy S_y^e + S_y^ir = S_y^p identically in the tunneling zone.
// The shift extracted from phi_r' is the same: the two phases differ by the
// constant pi/2, so the shift is spin-polarization independent.

namespace stepshift {

struct GhReport {
  double S_y_e;      // evanescent-current contribution
  double S_y_ir;     // incident/reflected interference contribution
  double S_y_total;  // S_y_e + S_y_ir
  double S_y_spm;    // stationary-phase closed form
  bool valid;        // tunneling zone, clear of the theta_c and grazing windows
  bool divergent;    // |theta - theta_c| < divergence window
};

// Divergence window around the critical angle inside which the shift is
// reported as unbounded rather than as a large float.
inline constexpr double kGhDivergenceWindow = 1e-3;

// S_y^e = (E+m)/(2 p_z (E-V0+m)) · [p_y(|t|^2+|t'|^2)/kappa - 2 Re(conj(t) t')].
// Requires the tunneling zone with kappa > 0 and p_y > 0; throws
// std::domain_error otherwise. Diverges as kappa -> 0+.
double gh_evanescent(const ScatterAmplitudes& amps, const Kinematics& kin,
                     const StepParams& params);

// S_y^ir = Re(r')/p_z - p_y·Im(r)/p_z^2, the lambda_z-averaged interference
// flux <P_ir> divided by the incident longitudinal current j_z^in = 2p_z/(E+m).
// Requires the tunneling zone; vanishes as theta -> theta_c+.
double gh_interference(const ScatterAmplitudes& amps, const Kinematics& kin,
                       const StepParams& params);

// Closed-form stationary-phase shift, equal to -d(arg r)/dp_y at fixed E:
//   S_y^p = p_y[(p_z^2 - V0 E) p_z^2 + kappa^2 (p_z^2 + V0 E)]
//           / (p_z kappa [(p_z^2 - V0 E)^2 + p_z^2 kappa^2]).
// Requires the tunneling zone. Computes the honest (possibly huge) value even
// inside the divergence window; only gh_report applies the window policy.
double gh_stationary_phase(const ScatterAmplitudes& amps, const Kinematics& kin,
                           const StepParams& params);

// Runs all three routes. Inside the divergence window the diverging fields
// (S_y_e, S_y_spm, S_y_total) are reported as +infinity with the divergent
// flag set. Throws std::domain_error outside the tunneling zone.
GhReport gh_report(const StepParams& params);

}  // namespace stepshift
