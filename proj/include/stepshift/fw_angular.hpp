#pragma once

#include "stepshift/scattering.hpp"

// Foldy-Wouthuysen expectation-value calculus: normalization, spin-orbit
// parameter, and the spin / orbital / total angular momentum budget of the
// incident and reflected beams. Conservation of J_z across the reflection
// yields the transverse shift as the difference of beam-center offsets.
//
// Expectation values use the unnormalized spinor columns; their norm is
// N = <psi|psi> = 2E/(E+m), which tends to 1 in the nonrelativistic limit.
// Beam-center positions <x0> are never computed absolutely: the incident
// offset is fixed to zero and only the difference (the shift) is physical.

namespace stepshift {

struct AngularBudget {
  double N;           // spinor normalization 2E/(E+m) = sec^2(alpha/2)
  double Delta;       // spin-orbit parameter (1 - m/E) sin^2(theta)
  double Sigma_z_in;  // <Sigma_z> incident  = (N/2)(1 - Delta)
  double Sigma_z_r;   // <Sigma_z> reflected = (N/2)(1 - Delta)(|r|^2 - |r'|^2)
  double L_z_in;      // (N/2) Delta + x0_offset_in · p_y
  double L_z_r;       // (N/2) Delta (|r|^2 - |r'|^2) + x0_offset_r · p_y
  double J_z_in;      // N/2 + x0_offset_in · p_y
  double J_z_r;       // (N/2)(|r|^2 - |r'|^2) + x0_offset_r · p_y
  double x0_offset_in;  // fixed reference, 0
  double x0_offset_r;   // solved from <J_z_in> = <J_z_r>; equals the TAM shift
};

// Direct spinor evaluation of <psi_in|Sigma_z|psi_in>; equals (N/2)(1-Delta).
double spin_expectation_incident(const StepParams& params);

struct FwCheckReport {
  double unitarity_residual;     // max |U U† - 1|
  double sigma_direct;           // <psi|Sigma_z|psi>
  double sigma_conjugated;       // <U psi|(U Sigma_z U†)|U psi>
  double conjugation_residual;   // |direct - conjugated|
  double lower_sector_leakage;   // max |(U psi_in)_3,4|: positive-energy
                                 // states land in the upper sector
};

// Builds U = cos(alpha/2)·1 + beta(alpha_vec·p)/|p| sin(alpha/2) with
// alpha = arctan(p/m) and verifies unitarity, the positive-energy projection
// and the equality of the two Sigma_z evaluation routes.
FwCheckReport fw_transform_check(const StepParams& params);

// Assembles the budget and solves conservation for x0_offset_r. Requires the
// tunneling zone and p_y > 0; throws std::domain_error otherwise.
AngularBudget tam_budget(const ScatterAmplitudes& amps, const StepParams& params);

}  // namespace stepshift
