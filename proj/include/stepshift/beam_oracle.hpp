#pragma once

#include "stepshift/scattering.hpp"

// Finite-width Gaussian beam validation of the GH shift: an angular spectrum
// of exact plane-wave solutions is synthesized, each component reflected with
// its own (r, r'), and the reflected-beam centroid displacement at z = 0 is
// compared against the stationary-phase prediction at the central angle.
//
// Spectral envelope (implementer's choice, the construction is plumbing):
// A(p_y) ∝ exp(-(p_y - p_y0)^2 w^2 / 4), normalized so ∫|A|^2 dp_y = 1 by
// trapezoidal quadrature on a uniform grid. All sums run in fixed grid order,
// single-threaded, so repeated runs are bitwise identical.

namespace stepshift {

struct BeamSpec {
  double theta0;        // central incidence angle (radians)
  double waist;         // beam waist w, units of 1/m; paraxial validity needs w·p >= 50
  int n_modes = 1024;   // spectral samples, >= 256
  double span = 5.0;    // spectral half-width in units of 1/w, >= 4
};

struct CentroidResult {
  double y_centroid_in;  // incident-beam centroid at z = 0
  double y_centroid_r;   // reflected-beam centroid at z = 0
  double gh_numeric;     // their difference
  double spm_reference;  // S_y^p at theta0
  double relative_gap;   // |gh_numeric - spm_reference| / |spm_reference|
  double spectrum_norm;  // ∫|A|² dp_y after normalization (1 up to quadrature)
};

// Throws std::invalid_argument when BeamSpec invariants are violated and
// std::domain_error when the spectrum is not clear of the critical angle
// (theta0 - theta_c <= 3/(w·p)), reaches grazing, or is not normalizable.
// params.theta is ignored; spec.theta0 is the central angle.
CentroidResult synthesize_and_measure(const BeamSpec& spec, const StepParams& params,
                                      Spin spin = Spin::Up);

struct PhaseDerivative {
  double value;               // -d(arg r)/dp_y at fixed E
  double level_disagreement;  // |D(h) - D(h/2)| / max(1, |value|)
  bool step_ok;               // disagreement within 1e-5
};

// Central finite difference of the reflection phase, h = 1e-6·p clamped to 2%
// of the distance to the kinematic edges (p_y = p and p_y(theta_c), where the
// phase has square-root behavior), with one Richardson level as fallback when
// the two step levels disagree beyond 1e-6.
PhaseDerivative phase_derivative_oracle(const StepParams& params);

}  // namespace stepshift
