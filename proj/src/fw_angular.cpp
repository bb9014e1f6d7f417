#include "stepshift/fw_angular.hpp"

#include <cmath>
#include <stdexcept>

namespace stepshift {

namespace {

const Complex kI{0.0, 1.0};

// Sigma_z = (1/2) diag(sigma_z, sigma_z)
Mat4 sigma_z_half() {
  Mat4 m{};
  m[0][0] = 0.5; m[1][1] = -0.5; m[2][2] = 0.5; m[3][3] = -0.5;
  return m;
}

// beta alpha_y and beta alpha_z blocks: beta·alpha_i = offdiag(sigma_i, -sigma_i)
Mat4 beta_alpha_y() {
  Mat4 m{};
  m[0][3] = -kI; m[1][2] = kI; m[2][1] = kI; m[3][0] = -kI;
  return m;
}
Mat4 beta_alpha_z() {
  Mat4 m{};
  m[0][2] = 1; m[1][3] = -1; m[2][0] = -1; m[3][1] = 1;
  return m;
}

Mat4 fw_transform(const Kinematics& kin, const StepParams& params) {
  const double alpha = std::atan2(kin.p, params.m);
  const double c = std::cos(alpha / 2.0), s = std::sin(alpha / 2.0);
  const Mat4 bay = beta_alpha_y(), baz = beta_alpha_z();
  Mat4 u = mat4_zero();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      u[i][j] = s * (bay[i][j] * kin.p_y + baz[i][j] * kin.p_z) / kin.p;
      if (i == j) u[i][j] += c;
    }
  return u;
}

}  // namespace

double spin_expectation_incident(const StepParams& params) {
  const Kinematics kin = derive_kinematics(params);
  const Spinor4 psi = basis_wave(WaveRole::IncidentUp, kin, params).components;
  return inner(psi, sigma_z_half() * psi).real();
}

FwCheckReport fw_transform_check(const StepParams& params) {
  const Kinematics kin = derive_kinematics(params);
  const Mat4 u = fw_transform(kin, params);
  const Mat4 sz = sigma_z_half();

  FwCheckReport rep{};
  rep.unitarity_residual = max_abs_diff(u * adjoint(u), mat4_identity());

  const Spinor4 psi = basis_wave(WaveRole::IncidentUp, kin, params).components;
  rep.sigma_direct = inner(psi, sz * psi).real();
  const Spinor4 phi = u * psi;
  const Mat4 sz_fw = (u * sz) * adjoint(u);
  rep.sigma_conjugated = inner(phi, sz_fw * phi).real();
  rep.conjugation_residual = std::abs(rep.sigma_direct - rep.sigma_conjugated);
  rep.lower_sector_leakage = std::max(std::abs(phi[2]), std::abs(phi[3]));
  return rep;
}

AngularBudget tam_budget(const ScatterAmplitudes& amps, const StepParams& params) {
  const Kinematics kin = derive_kinematics(params);
  if (kin.zone != Zone::Tunneling)
    throw std::domain_error("tam_budget: J_z bookkeeping closes only under total reflection");
  if (!(kin.p_y > 0.0))
    throw std::domain_error("tam_budget: requires p_y > 0");

  AngularBudget b{};
  b.N = 2.0 * params.E / (params.E + params.m);
  b.Delta = (1.0 - params.m / params.E) * std::sin(params.theta) * std::sin(params.theta);

  const double weight = std::norm(amps.r) - std::norm(amps.r_prime);
  b.Sigma_z_in = spin_expectation_incident(params);
  b.Sigma_z_r = 0.5 * b.N * (1.0 - b.Delta) * weight;

  b.x0_offset_in = 0.0;
  b.L_z_in = 0.5 * b.N * b.Delta + b.x0_offset_in * kin.p_y;
  b.J_z_in = b.Sigma_z_in + b.L_z_in;

  // <J_z_in> = <J_z_r> solved for the reflected beam-center offset.
  b.x0_offset_r = 0.5 * b.N * (1.0 - weight) / kin.p_y + b.x0_offset_in;
  b.L_z_r = 0.5 * b.N * b.Delta * weight + b.x0_offset_r * kin.p_y;
  b.J_z_r = 0.5 * b.N * weight + b.x0_offset_r * kin.p_y;
  return b;
}

}  // namespace stepshift
