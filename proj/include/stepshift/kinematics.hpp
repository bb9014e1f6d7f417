#pragma once

#include <complex>
#include <optional>
#include <span>
#include <vector>

// Kinematics of a relativistic electron hitting a one-dimensional potential
// step V(z) = V0·H(z). Natural units (hbar = c = 1): energies in multiples of
// the rest mass, lengths in multiples of 1/m.

namespace stepshift {

struct StepParams {
  double E;            // total energy, must exceed m
  double m = 1.0;      // rest mass
  double V0;           // step height, > 0
  double theta = 0.0;  // incidence angle in radians, [0, pi/2)
};

// Throws std::invalid_argument when any StepParams invariant is violated.
void validate(const StepParams& params);

// Energy zones of the transmitted wave. Diffusion and Klein have propagating
// transmission, Tunneling is evanescent. Boundary equalities (E = V0 ± m*)
// are classified Degenerate: kappa = 0 or q_z = 0 make the shift formulas
// singular, so downstream operations refuse such inputs.
enum class Zone { Diffusion, Tunneling, Klein, Degenerate };

const char* to_string(Zone zone) noexcept;

struct Kinematics {
  double p;                  // incident momentum magnitude sqrt(E^2 - m^2)
  double p_y, p_z;           // transverse / longitudinal components
  double q_y;                // transmitted transverse momentum (= p_y)
  std::complex<double> q_z;  // transmitted longitudinal momentum; i*kappa when tunneling
  double kappa;              // evanescent decay rate; > 0 only in the tunneling zone
  double m_star;             // effective mass sqrt(p_y^2 + m^2)
  Zone zone;
  std::optional<double> theta_c;  // critical angle, when defined
};

// Derives momenta, classifies the zone against E = V0 ± m* and attaches the
// critical angle. Throws std::invalid_argument for invalid StepParams.
Kinematics derive_kinematics(const StepParams& params);

// arcsin(sqrt(((E-V0)^2 - m^2)/(E^2 - m^2))) when the argument lies in [0, 1];
// nullopt otherwise (no angle of total-reflection onset: either (E-V0)^2 < m^2,
// where tunneling holds at all angles, or E < V0/2, where the Klein inequality
// governs instead).
std::optional<double> critical_angle(const StepParams& params);

struct ZoneMap {
  std::vector<double> energies;
  std::vector<double> thetas;
  std::vector<Zone> cells;       // row-major: cells[iE * thetas.size() + iTheta]
  // Zone boundary curves E = V0 ± m*(E, theta) solved for E, sampled per theta:
  //   E±(theta) = (V0 ± sqrt(V0^2 sin^2(theta) + m^2 cos^4(theta))) / cos^2(theta)
  std::vector<double> boundary_upper;  // tunneling/diffusion
  std::vector<double> boundary_lower;  // tunneling/Klein
  std::vector<std::optional<double>> theta_c;  // per energy
};

// Classifies every (E, theta) grid cell. Grids must be non-empty, sorted
// ascending, with all energies > m and all angles in [0, pi/2).
ZoneMap zone_map(std::span<const double> energies, std::span<const double> thetas,
                 double m, double V0);

}  // namespace stepshift
