#pragma once

#include "stepshift/scattering.hpp"

// Transverse Imbert-Fedorov shift of the totally reflected beam, from the
// transmitted transverse current and, independently, from conservation of the
// z component of total angular momentum. The two routes agree qualitatively
// (same peak location and decay) but are not numerically equal; `validate`
// and the acceptance suite measure and report the deviation profile.

namespace stepshift {

enum class IncidentPolarization { SpinUp, SpinDown, HelicityPlus, HelicityMinus };

const char* to_string(IncidentPolarization pol) noexcept;

struct IfReport {
  double S_x_up;       // current-route shift, spin-up incidence
  double S_x_down;     // spin-down incidence (= -S_x_up)
  double S_x_helicity; // helicity eigenstates: S_x_up · cos(theta)
  double dS_x_tam;     // TAM-conservation shift (spin-up); spin-down negates
  IncidentPolarization polarization;
};

// Current route, spin-up incidence:
//   S_x = i(E+m)/(2 p_y (E-V0+m)) (conj(t) t' - conj(t') t)
//       = (E+m)/(p_y (E-V0+m)) · Im(conj(t') t),
// evaluated through the reduced amplitude t'/p_y so the p_y -> 0 limit is the
// analytic one. Requires the tunneling zone; throws std::domain_error
// otherwise. Spin-down incidence gives the negated value; if_current computes
// it from the spin-down combination rather than by flipping the sign.
double if_current(const ScatterAmplitudes& amps, const Kinematics& kin,
                  const StepParams& params, Spin spin = Spin::Up);

// Helicity projection S'_x = S_x cos(theta).
double if_helicity(double S_x_up, double theta);

// TAM-conservation route (spin-up):
//   dS_x = N/(2 p_y) [1 - (|r|^2 - |r'|^2)],  N = 2E/(E+m),
// which in the tunneling zone reduces to N |r'|^2 / p_y via unitarity.
// Requires the tunneling zone and p_y > 0.
double if_tam(const ScatterAmplitudes& amps, const Kinematics& kin,
              const StepParams& params);

// Populates all fields and asserts the antisymmetry and helicity-projection
// invariants. Throws std::domain_error outside the tunneling zone.
IfReport if_report(const StepParams& params, IncidentPolarization polarization);

}  // namespace stepshift
