#include "stepshift/kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace stepshift {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Relative tolerance for classifying a point as sitting exactly on a zone
// boundary. Scaled by the energies involved so it behaves for large E, V0.
double boundary_tolerance(double E, double V0, double m_star) {
  return 1e-12 * std::max({1.0, std::abs(E), V0 + m_star});
}

Zone classify(double E, double V0, double m_star) {
  const double tol = boundary_tolerance(E, V0, m_star);
  if (std::abs(E - (V0 + m_star)) <= tol || std::abs(E - (V0 - m_star)) <= tol)
    return Zone::Degenerate;
  if (E > V0 + m_star) return Zone::Diffusion;
  if (E > V0 - m_star) return Zone::Tunneling;
  return Zone::Klein;
}

}  // namespace

void validate(const StepParams& params) {
  if (!(params.m > 0.0))
    throw std::invalid_argument("StepParams: rest mass must be positive");
  if (!(params.E > params.m))
    throw std::invalid_argument("StepParams: E must exceed m (no propagating incident wave)");
  if (!(params.V0 > 0.0))
    throw std::invalid_argument("StepParams: V0 must be positive");
  if (!(params.theta >= 0.0 && params.theta < kPi / 2.0))
    throw std::invalid_argument("StepParams: theta must lie in [0, pi/2)");
}

const char* to_string(Zone zone) noexcept {
  switch (zone) {
    case Zone::Diffusion: return "D";
    case Zone::Tunneling: return "T";
    case Zone::Klein: return "K";
    case Zone::Degenerate: return "degenerate";
  }
  return "?";
}

std::optional<double> critical_angle(const StepParams& params) {
  validate(params);
  const double num = (params.E - params.V0) * (params.E - params.V0) - params.m * params.m;
  const double den = params.E * params.E - params.m * params.m;
  const double arg = num / den;
  if (arg < 0.0 || arg > 1.0) return std::nullopt;
  return std::asin(std::sqrt(arg));
}

Kinematics derive_kinematics(const StepParams& params) {
  validate(params);
  const double E = params.E, m = params.m, V0 = params.V0;

  Kinematics kin{};
  kin.p = std::sqrt(E * E - m * m);
  kin.p_y = kin.p * std::sin(params.theta);
  kin.p_z = kin.p * std::cos(params.theta);
  kin.q_y = kin.p_y;
  kin.m_star = std::sqrt(kin.p_y * kin.p_y + m * m);
  kin.zone = classify(E, V0, kin.m_star);

  const double qz2 = (E - V0) * (E - V0) - kin.p_y * kin.p_y - m * m;
  if (qz2 >= 0.0) {
    kin.q_z = std::sqrt(qz2);  // positive root in both D and K
    kin.kappa = 0.0;
  } else {
    kin.kappa = std::sqrt(-qz2);
    kin.q_z = std::complex<double>(0.0, kin.kappa);
  }
  kin.theta_c = critical_angle(params);
  return kin;
}

ZoneMap zone_map(std::span<const double> energies, std::span<const double> thetas,
                 double m, double V0) {
  if (energies.empty() || thetas.empty())
    throw std::invalid_argument("zone_map: grids must be non-empty");
  if (!std::is_sorted(energies.begin(), energies.end()) ||
      !std::is_sorted(thetas.begin(), thetas.end()))
    throw std::invalid_argument("zone_map: grids must be sorted ascending");
  for (double E : energies)
    if (!std::isfinite(E) || E <= m)
      throw std::invalid_argument("zone_map: energies must be finite and exceed m");
  for (double th : thetas)
    if (!std::isfinite(th) || th < 0.0 || th >= kPi / 2.0)
      throw std::invalid_argument("zone_map: angles must lie in [0, pi/2)");

  ZoneMap map;
  map.energies.assign(energies.begin(), energies.end());
  map.thetas.assign(thetas.begin(), thetas.end());
  map.cells.reserve(energies.size() * thetas.size());

  for (double E : energies) {
    const double p2 = E * E - m * m;
    for (double th : thetas) {
      const double py = std::sqrt(p2) * std::sin(th);
      const double m_star = std::sqrt(py * py + m * m);
      map.cells.push_back(classify(E, V0, m_star));
    }
  }

  map.boundary_upper.reserve(thetas.size());
  map.boundary_lower.reserve(thetas.size());
  for (double th : thetas) {
    const double c2 = std::cos(th) * std::cos(th);
    const double root = std::sqrt(V0 * V0 * (1.0 - c2) + m * m * c2 * c2);
    map.boundary_upper.push_back((V0 + root) / c2);
    map.boundary_lower.push_back((V0 - root) / c2);
  }

  map.theta_c.reserve(energies.size());
  for (double E : energies)
    map.theta_c.push_back(critical_angle({E, m, V0, 0.0}));
  return map;
}

}  // namespace stepshift
