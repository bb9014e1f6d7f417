#include "stepshift/gh_shift.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace stepshift {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require_tunneling(const Kinematics& kin, const char* who) {
  if (kin.zone != Zone::Tunneling)
    throw std::domain_error(std::string(who) + ": GH energy-flux decomposition is defined in the tunneling zone only");
}

}  // namespace

double gh_evanescent(const ScatterAmplitudes& amps, const Kinematics& kin,
                     const StepParams& params) {
  require_tunneling(kin, "gh_evanescent");
  if (!(kin.kappa > 0.0))
    throw std::domain_error("gh_evanescent: kappa must be positive");
  if (!(kin.p_y > 0.0))
    throw std::domain_error("gh_evanescent: no lateral shift at normal incidence (p_y = 0)");

  const double E = params.E, m = params.m, V0 = params.V0;
  const double trans = std::norm(amps.t) + std::norm(amps.t_prime);
  const double cross = 2.0 * (std::conj(amps.t) * amps.t_prime).real();
  return (E + m) / (2.0 * kin.p_z * (E - V0 + m)) * (kin.p_y * trans / kin.kappa - cross);
}

double gh_interference(const ScatterAmplitudes& amps, const Kinematics& kin,
                       const StepParams& params) {
  require_tunneling(kin, "gh_interference");
  (void)params;
  if (!(kin.p_z > 0.0))
    throw std::domain_error("gh_interference: p_z must be positive");
  return amps.r_prime.real() / kin.p_z - kin.p_y * amps.r.imag() / (kin.p_z * kin.p_z);
}

double gh_stationary_phase(const ScatterAmplitudes& amps, const Kinematics& kin,
                           const StepParams& params) {
  require_tunneling(kin, "gh_stationary_phase");
  (void)amps;
  const double u = kin.p_z * kin.p_z - params.V0 * params.E;
  const double den = u * u + kin.p_z * kin.p_z * kin.kappa * kin.kappa;
  return kin.p_y *
         (u * kin.p_z * kin.p_z + kin.kappa * kin.kappa * (kin.p_z * kin.p_z + params.V0 * params.E)) /
         (kin.p_z * kin.kappa * den);
}

GhReport gh_report(const StepParams& params) {
  const Kinematics kin = derive_kinematics(params);
  require_tunneling(kin, "gh_report");
  const ScatterAmplitudes amps = amplitudes_closed_form(kin, params);

  GhReport rep{};
  rep.divergent = kin.theta_c && std::abs(params.theta - *kin.theta_c) < kGhDivergenceWindow;
  rep.S_y_ir = gh_interference(amps, kin, params);
  if (rep.divergent) {
    const double inf = std::numeric_limits<double>::infinity();
    rep.S_y_e = inf;
    rep.S_y_spm = inf;
    rep.S_y_total = inf;
  } else {
    rep.S_y_e = gh_evanescent(amps, kin, params);
    rep.S_y_spm = gh_stationary_phase(amps, kin, params);
    rep.S_y_total = rep.S_y_e + rep.S_y_ir;
  }
  rep.valid = !rep.divergent && kin.p_y > 0.0 && (kPi / 2.0 - params.theta) > 1e-3;
  return rep;
}

}  // namespace stepshift
