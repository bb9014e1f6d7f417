#pragma once

#include "stepshift/kinematics.hpp"
#include "stepshift/linalg.hpp"

// Spinor plane waves, closed-form scattering amplitudes at the step, Dirac
// currents and the current-conservation identities.

namespace stepshift {

enum class WaveRole {
  IncidentUp,
  IncidentDown,
  ReflectedUp,
  ReflectedDown,
  TransmittedUp,
  TransmittedDown,
};

// Incident spin polarization (helicity states are handled at report level).
enum class Spin { Up, Down };

// One plane-wave factor: components * exp(i k_z z), common transverse factor
// exp(i p_y y) suppressed. Components follow the unnormalized spinor columns
// (chi, sigma·p/(E+m) chi); the overall 1/sqrt(N) is deferred to the angular
// momentum module, shifts being normalization-free ratios.
struct SpinorWave {
  Spinor4 components;  // value at z = 0
  Complex k_z;
  WaveRole role;
};

SpinorWave basis_wave(WaveRole role, const Kinematics& kin, const StepParams& params);

Spinor4 evaluate(const SpinorWave& wave, double z);

struct ScatterAmplitudes {
  Complex r;        // spin-conserving reflection
  Complex r_prime;  // spin-flip reflection
  Complex t;        // spin-conserving transmission
  Complex t_prime;  // spin-flip transmission (= r_prime identically)
  // Spin-flip amplitudes carry an explicit p_y factor; the reduced forms
  // r'/p_y, t'/p_y stay finite as p_y -> 0 and feed the transverse-shift
  // formulas without a removable singularity.
  Complex r_prime_reduced;
  Complex t_prime_reduced;
  double phi_r;        // principal arg of r, in (-pi, pi]
  double phi_r_prime;  // principal arg of r'
};

// Closed-form amplitudes
//   r  = (p_y^2 + m^2 + mE) V0 / [(E+m)(p_z^2 + p_z q_z - V0 E)]
//   t  = [p_z^2 (E-V0+m) + p_z q_z (E+m)] / [(E+m)(p_z^2 + p_z q_z - V0 E)]
//   r' = i p_y p_z V0 / [(E+m)(p_z^2 + p_z q_z - V0 E)],  t' = r'
// with q_z = i kappa in the tunneling zone. Requires zone D or T; throws
// std::domain_error for Klein/degenerate kinematics and for a shared
// denominator within 1e-12·|V0 E| of zero (resonance anomaly).
ScatterAmplitudes amplitudes_closed_form(const Kinematics& kin, const StepParams& params);

// Independent route: solves the four continuity equations
// psi_in(0) + psi_r(0) = psi_t(0) as a 4x4 complex linear system in
// (r, r', t, t'). Throws std::runtime_error if the system is numerically
// rank-deficient.
ScatterAmplitudes boundary_match_oracle(const Kinematics& kin, const StepParams& params);

// Max-norm residual of the continuity condition for the given amplitudes.
double boundary_residual(const ScatterAmplitudes& amps, const Kinematics& kin,
                         const StepParams& params);

struct CurrentVector {
  double j_x, j_y, j_z;
};

enum class WaveCombination { Incident, Reflected, Transmitted, Interference };

// Dirac current j = psi† alpha psi of the selected wave combination at z.
// Interference is the full symmetrized cross term
//   j_ir = psi_in† alpha psi_r + psi_r† alpha psi_in = 2 Re(psi_in† alpha psi_r),
// the piece of the combined-beam current bilinear in incident and reflected
// waves. For spin-down incidence the amplitudes are unchanged and the basis
// roles swap (r multiplies reflected-down, r' reflected-up, likewise t, t').
CurrentVector current(WaveCombination combo, const ScatterAmplitudes& amps,
                      const Kinematics& kin, const StepParams& params, double z,
                      Spin spin = Spin::Up);

struct ConservationReport {
  Zone zone;
  double residual;  // |identity - 1|
};

// Zone T: |r|^2 + |r'|^2 = 1 (total reflection).
// Zone D: |r|^2 + |r'|^2 + q_z(E+m)/(p_z(E-V0+m))·(|t|^2 + |t'|^2) = 1.
ConservationReport conservation_check(const ScatterAmplitudes& amps, const Kinematics& kin,
                                      const StepParams& params);

}  // namespace stepshift
