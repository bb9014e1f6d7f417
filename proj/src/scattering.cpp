#include "stepshift/scattering.hpp"

#include <cmath>
#include <stdexcept>

namespace stepshift {

namespace {

const Complex kI{0.0, 1.0};

// Dirac matrices in the standard representation, alpha_i = offdiag(sigma_i).
Mat4 alpha_x() {
  Mat4 m{};
  m[0][3] = 1; m[1][2] = 1; m[2][1] = 1; m[3][0] = 1;
  return m;
}
Mat4 alpha_y() {
  Mat4 m{};
  m[0][3] = -kI; m[1][2] = kI; m[2][1] = -kI; m[3][0] = kI;
  return m;
}
Mat4 alpha_z() {
  Mat4 m{};
  m[0][2] = 1; m[1][3] = -1; m[2][0] = 1; m[3][1] = -1;
  return m;
}

void require_scattering_zone(const Kinematics& kin) {
  if (kin.zone == Zone::Degenerate)
    throw std::domain_error("scattering: degenerate kinematics (E on a zone boundary)");
  if (kin.zone == Zone::Klein)
    throw std::domain_error("scattering: Klein zone is classification-only");
}

struct WaveSet {
  SpinorWave inc, ref, tra;
};

// Assembles incident / reflected / transmitted waves for the given incident
// spin. Amplitudes are spin-independent; the basis roles swap for spin-down.
WaveSet combine(const ScatterAmplitudes& amps, const Kinematics& kin,
                const StepParams& params, Spin spin) {
  const SpinorWave ru = basis_wave(WaveRole::ReflectedUp, kin, params);
  const SpinorWave rd = basis_wave(WaveRole::ReflectedDown, kin, params);
  const SpinorWave tu = basis_wave(WaveRole::TransmittedUp, kin, params);
  const SpinorWave td = basis_wave(WaveRole::TransmittedDown, kin, params);

  WaveSet set;
  if (spin == Spin::Up) {
    set.inc = basis_wave(WaveRole::IncidentUp, kin, params);
    set.ref = SpinorWave{amps.r * ru.components + amps.r_prime * rd.components, ru.k_z,
                         WaveRole::ReflectedUp};
    set.tra = SpinorWave{amps.t * tu.components + amps.t_prime * td.components, tu.k_z,
                         WaveRole::TransmittedUp};
  } else {
    set.inc = basis_wave(WaveRole::IncidentDown, kin, params);
    set.ref = SpinorWave{amps.r * rd.components + amps.r_prime * ru.components, ru.k_z,
                         WaveRole::ReflectedDown};
    set.tra = SpinorWave{amps.t * td.components + amps.t_prime * tu.components, tu.k_z,
                         WaveRole::TransmittedDown};
  }
  return set;
}

}  // namespace

SpinorWave basis_wave(WaveRole role, const Kinematics& kin, const StepParams& params) {
  const double a = 1.0 / (params.E + params.m);
  const double b_den = params.E - params.V0 + params.m;
  const double py = kin.p_y, pz = kin.p_z;
  const Complex qz = kin.q_z;

  switch (role) {
    case WaveRole::IncidentUp:
      return {{1.0, 0.0, pz * a, kI * py * a}, pz, role};
    case WaveRole::IncidentDown:
      return {{0.0, 1.0, -kI * py * a, -pz * a}, pz, role};
    case WaveRole::ReflectedUp:
      return {{1.0, 0.0, -pz * a, kI * py * a}, -pz, role};
    case WaveRole::ReflectedDown:
      return {{0.0, 1.0, -kI * py * a, pz * a}, -pz, role};
    case WaveRole::TransmittedUp:
    case WaveRole::TransmittedDown: {
      if (b_den == 0.0)
        throw std::domain_error("basis_wave: transmitted spinor normalization singular (E = V0 - m)");
      const double b = 1.0 / b_den;
      if (role == WaveRole::TransmittedUp)
        return {{1.0, 0.0, qz * b, kI * py * b}, qz, role};
      return {{0.0, 1.0, -kI * py * b, -qz * b}, qz, role};
    }
  }
  throw std::logic_error("basis_wave: unknown role");
}

Spinor4 evaluate(const SpinorWave& wave, double z) {
  const Complex phase = std::exp(kI * wave.k_z * z);
  return phase * wave.components;
}

ScatterAmplitudes amplitudes_closed_form(const Kinematics& kin, const StepParams& params) {
  require_scattering_zone(kin);
  const double E = params.E, m = params.m, V0 = params.V0;
  const double py = kin.p_y, pz = kin.p_z;
  const Complex qz = kin.q_z;

  const Complex shared = pz * pz + pz * qz - V0 * E;
  if (std::abs(shared) < 1e-12 * std::abs(V0 * E))
    throw std::domain_error("amplitudes_closed_form: resonance anomaly (vanishing denominator)");
  const Complex den = (E + m) * shared;

  ScatterAmplitudes amps;
  amps.r = (py * py + m * m + m * E) * V0 / den;
  amps.t = (pz * pz * (E - V0 + m) + pz * qz * (E + m)) / den;
  amps.r_prime_reduced = kI * pz * V0 / den;
  amps.t_prime_reduced = amps.r_prime_reduced;
  amps.r_prime = py * amps.r_prime_reduced;
  amps.t_prime = amps.r_prime;
  amps.phi_r = std::arg(amps.r);
  amps.phi_r_prime = std::arg(amps.r_prime);
  return amps;
}

ScatterAmplitudes boundary_match_oracle(const Kinematics& kin, const StepParams& params) {
  require_scattering_zone(kin);
  const Spinor4 inc = basis_wave(WaveRole::IncidentUp, kin, params).components;
  const Spinor4 ru = basis_wave(WaveRole::ReflectedUp, kin, params).components;
  const Spinor4 rd = basis_wave(WaveRole::ReflectedDown, kin, params).components;
  const Spinor4 tu = basis_wave(WaveRole::TransmittedUp, kin, params).components;
  const Spinor4 td = basis_wave(WaveRole::TransmittedDown, kin, params).components;

  // Unknowns x = (r, r', t, t'):  -r·ru - r'·rd + t·tu + t'·td = inc
  Mat4 a{};
  for (int i = 0; i < 4; ++i) {
    a[i][0] = -ru[i];
    a[i][1] = -rd[i];
    a[i][2] = tu[i];
    a[i][3] = td[i];
  }
  const Spinor4 x = solve4(a, inc);

  ScatterAmplitudes amps;
  amps.r = x[0];
  amps.r_prime = x[1];
  amps.t = x[2];
  amps.t_prime = x[3];
  if (kin.p_y != 0.0) {
    amps.r_prime_reduced = amps.r_prime / kin.p_y;
    amps.t_prime_reduced = amps.t_prime / kin.p_y;
  } else {
    // r' has a simple zero at p_y = 0; the reduced amplitude stays finite.
    const Complex shared = kin.p_z * kin.p_z + kin.p_z * kin.q_z - params.V0 * params.E;
    amps.r_prime_reduced = kI * kin.p_z * params.V0 / ((params.E + params.m) * shared);
    amps.t_prime_reduced = amps.r_prime_reduced;
  }
  amps.phi_r = std::arg(amps.r);
  amps.phi_r_prime = std::arg(amps.r_prime);
  return amps;
}

double boundary_residual(const ScatterAmplitudes& amps, const Kinematics& kin,
                         const StepParams& params) {
  const Spinor4 inc = basis_wave(WaveRole::IncidentUp, kin, params).components;
  const Spinor4 ru = basis_wave(WaveRole::ReflectedUp, kin, params).components;
  const Spinor4 rd = basis_wave(WaveRole::ReflectedDown, kin, params).components;
  const Spinor4 tu = basis_wave(WaveRole::TransmittedUp, kin, params).components;
  const Spinor4 td = basis_wave(WaveRole::TransmittedDown, kin, params).components;
  const Spinor4 lhs = inc + amps.r * ru + amps.r_prime * rd;
  const Spinor4 rhs = amps.t * tu + amps.t_prime * td;
  return max_abs(lhs - rhs);
}

CurrentVector current(WaveCombination combo, const ScatterAmplitudes& amps,
                      const Kinematics& kin, const StepParams& params, double z,
                      Spin spin) {
  static const Mat4 ax = alpha_x(), ay = alpha_y(), az = alpha_z();
  const WaveSet set = combine(amps, kin, params, spin);

  auto bilinear = [&](const Spinor4& bra, const Spinor4& ket) -> CurrentVector {
    return {(inner(bra, ax * ket)).real(), (inner(bra, ay * ket)).real(),
            (inner(bra, az * ket)).real()};
  };

  switch (combo) {
    case WaveCombination::Incident: {
      const Spinor4 psi = evaluate(set.inc, z);
      return bilinear(psi, psi);
    }
    case WaveCombination::Reflected: {
      const Spinor4 psi = evaluate(set.ref, z);
      return bilinear(psi, psi);
    }
    case WaveCombination::Transmitted: {
      const Spinor4 psi = evaluate(set.tra, z);
      return bilinear(psi, psi);
    }
    case WaveCombination::Interference: {
      const Spinor4 pin = evaluate(set.inc, z);
      const Spinor4 pr = evaluate(set.ref, z);
      const CurrentVector c = bilinear(pin, pr);
      return {2.0 * c.j_x, 2.0 * c.j_y, 2.0 * c.j_z};
    }
  }
  throw std::logic_error("current: unknown combination");
}

ConservationReport conservation_check(const ScatterAmplitudes& amps, const Kinematics& kin,
                                      const StepParams& params) {
  const double refl = std::norm(amps.r) + std::norm(amps.r_prime);
  if (kin.zone == Zone::Tunneling)
    return {kin.zone, std::abs(refl - 1.0)};
  if (kin.zone == Zone::Diffusion) {
    const double weight = kin.q_z.real() * (params.E + params.m) /
                          (kin.p_z * (params.E - params.V0 + params.m));
    const double trans = std::norm(amps.t) + std::norm(amps.t_prime);
    return {kin.zone, std::abs(refl + weight * trans - 1.0)};
  }
  throw std::domain_error("conservation_check: requires zone D or T");
}

}  // namespace stepshift
