#include "stepshift/if_shift.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace stepshift {

namespace {

const Complex kI{0.0, 1.0};

void require_tunneling(const Kinematics& kin, const char* who) {
  if (kin.zone != Zone::Tunneling)
    throw std::domain_error(std::string(who) + ": transverse shift is defined in the tunneling zone only");
}

}  // namespace

const char* to_string(IncidentPolarization pol) noexcept {
  switch (pol) {
    case IncidentPolarization::SpinUp: return "up";
    case IncidentPolarization::SpinDown: return "down";
    case IncidentPolarization::HelicityPlus: return "helicity+";
    case IncidentPolarization::HelicityMinus: return "helicity-";
  }
  return "?";
}

double if_current(const ScatterAmplitudes& amps, const Kinematics& kin,
                  const StepParams& params, Spin spin) {
  require_tunneling(kin, "if_current");
  const double pref = (params.E + params.m) / (2.0 * (params.E - params.V0 + params.m));
  // Spin-up: i·pref·(conj(t) t'_red - conj(t'_red) t); the parenthesis is
  // exactly anti-Hermitian, so the result is exactly real. Spin-down swaps the
  // product order, which negates the current.
  const Complex bracket =
      spin == Spin::Up
          ? std::conj(amps.t) * amps.t_prime_reduced - std::conj(amps.t_prime_reduced) * amps.t
          : std::conj(amps.t_prime_reduced) * amps.t - std::conj(amps.t) * amps.t_prime_reduced;
  const Complex shift = kI * pref * bracket;
  if (std::abs(shift.imag()) > 1e-14 * std::max(1.0, std::abs(shift.real())))
    throw std::logic_error("if_current: nonvanishing imaginary residue");
  return shift.real();
}

double if_helicity(double S_x_up, double theta) { return S_x_up * std::cos(theta); }

double if_tam(const ScatterAmplitudes& amps, const Kinematics& kin,
              const StepParams& params) {
  require_tunneling(kin, "if_tam");
  if (!(kin.p_y > 0.0))
    throw std::domain_error("if_tam: requires p_y > 0");
  const double N = 2.0 * params.E / (params.E + params.m);
  return N / (2.0 * kin.p_y) * (1.0 - (std::norm(amps.r) - std::norm(amps.r_prime)));
}

IfReport if_report(const StepParams& params, IncidentPolarization polarization) {
  const Kinematics kin = derive_kinematics(params);
  require_tunneling(kin, "if_report");
  const ScatterAmplitudes amps = amplitudes_closed_form(kin, params);

  IfReport rep{};
  rep.polarization = polarization;
  rep.S_x_up = if_current(amps, kin, params, Spin::Up);
  rep.S_x_down = if_current(amps, kin, params, Spin::Down);
  rep.S_x_helicity = if_helicity(rep.S_x_up, params.theta);
  rep.dS_x_tam = if_tam(amps, kin, params);

  if (std::abs(rep.S_x_down + rep.S_x_up) > 1e-12 * std::max(1.0, std::abs(rep.S_x_up)))
    throw std::logic_error("if_report: antisymmetry violated");
  if (rep.S_x_helicity != rep.S_x_up * std::cos(params.theta))
    throw std::logic_error("if_report: helicity projection violated");
  return rep;
}

}  // namespace stepshift
