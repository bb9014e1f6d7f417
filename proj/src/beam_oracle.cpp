#include "stepshift/beam_oracle.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "stepshift/gh_shift.hpp"

namespace stepshift {

namespace {

const Complex kI{0.0, 1.0};

double trapezoid(const std::vector<double>& f, double dx) {
  double s = 0.5 * (f.front() + f.back());
  for (size_t i = 1; i + 1 < f.size(); ++i) s += f[i];
  return s * dx;
}

double principal_delta(double a, double b) {
  double d = a - b;
  while (d > 3.14159265358979323846) d -= 2.0 * 3.14159265358979323846;
  while (d < -3.14159265358979323846) d += 2.0 * 3.14159265358979323846;
  return d;
}

}  // namespace

CentroidResult synthesize_and_measure(const BeamSpec& spec, const StepParams& params,
                                      Spin spin) {
  validate({params.E, params.m, params.V0, spec.theta0});
  const StepParams central{params.E, params.m, params.V0, spec.theta0};
  const Kinematics kin0 = derive_kinematics(central);
  const double p = kin0.p;

  if (!(spec.waist * p >= 50.0))
    throw std::invalid_argument("BeamSpec: paraxial validity requires w*p >= 50");
  if (spec.n_modes < 256) throw std::invalid_argument("BeamSpec: n_modes >= 256 required");
  if (!(spec.span >= 4.0)) throw std::invalid_argument("BeamSpec: span >= 4 required");
  if (kin0.zone != Zone::Tunneling)
    throw std::domain_error("synthesize_and_measure: central angle must lie in the tunneling zone");
  if (kin0.theta_c && !(spec.theta0 - *kin0.theta_c > 3.0 / (spec.waist * p)))
    throw std::domain_error("synthesize_and_measure: spectrum too close to the critical angle");

  const double w = spec.waist;
  const double py0 = p * std::sin(spec.theta0);
  const double half_width = spec.span / w;

  // Every spectral sample must stay inside the tunneling zone.
  if (kin0.theta_c && py0 - half_width <= p * std::sin(*kin0.theta_c))
    throw std::domain_error("synthesize_and_measure: spectrum overlaps the critical angle");
  if (py0 + half_width >= p)
    throw std::domain_error("synthesize_and_measure: spectrum reaches grazing incidence");

  const int n = spec.n_modes;
  const double dpy = 2.0 * half_width / (n - 1);

  std::vector<double> pys(n), weight(n);
  for (int k = 0; k < n; ++k) {
    pys[k] = py0 - half_width + k * dpy;
    const double d = pys[k] - py0;
    weight[k] = std::exp(-d * d * w * w / 4.0);
  }
  std::vector<double> w2(n);
  for (int k = 0; k < n; ++k) w2[k] = weight[k] * weight[k];
  const double norm2 = trapezoid(w2, dpy);
  if (!(norm2 > 1e-300))
    throw std::domain_error("synthesize_and_measure: spectrum not normalizable");
  const double inv_norm = 1.0 / std::sqrt(norm2);
  for (int k = 0; k < n; ++k) weight[k] *= inv_norm;
  for (int k = 0; k < n; ++k) w2[k] = weight[k] * weight[k];
  const double spectrum_norm = trapezoid(w2, dpy);

  // Per-mode spinors and reflection amplitudes at the shared energy.
  std::vector<Spinor4> inc_modes(n), ref_modes(n);
  for (int k = 0; k < n; ++k) {
    const double theta_k = std::asin(pys[k] / p);
    const StepParams mode_params{params.E, params.m, params.V0, theta_k};
    const Kinematics kin = derive_kinematics(mode_params);
    const ScatterAmplitudes amps = amplitudes_closed_form(kin, mode_params);
    const Spinor4 ru = basis_wave(WaveRole::ReflectedUp, kin, mode_params).components;
    const Spinor4 rd = basis_wave(WaveRole::ReflectedDown, kin, mode_params).components;
    if (spin == Spin::Up) {
      inc_modes[k] = basis_wave(WaveRole::IncidentUp, kin, mode_params).components;
      ref_modes[k] = amps.r * ru + amps.r_prime * rd;
    } else {
      inc_modes[k] = basis_wave(WaveRole::IncidentDown, kin, mode_params).components;
      ref_modes[k] = amps.r * rd + amps.r_prime * ru;
    }
  }

  // Real-space densities at z = 0 on a w-scaled grid.
  const int ny = 4001;
  const double y_max = 8.0 * w;
  const double dy = 2.0 * y_max / (ny - 1);
  std::vector<double> ys(ny), rho_in(ny, 0.0), rho_r(ny, 0.0);
  for (int i = 0; i < ny; ++i) ys[i] = -y_max + i * dy;

  for (int i = 0; i < ny; ++i) {
    Spinor4 f_in{}, f_r{};
    for (int k = 0; k < n; ++k) {
      const Complex phase = weight[k] * std::exp(kI * pys[k] * ys[i]);
      for (int c = 0; c < 4; ++c) {
        f_in[c] += phase * inc_modes[k][c];
        f_r[c] += phase * ref_modes[k][c];
      }
    }
    for (int c = 0; c < 4; ++c) {
      rho_in[i] += std::norm(f_in[c]);
      rho_r[i] += std::norm(f_r[c]);
    }
  }

  // Centroid over |y - y_peak| <= 6w; Gaussian tails beyond that are < 1e-15.
  auto centroid = [&](const std::vector<double>& rho) {
    int peak = 0;
    for (int i = 1; i < ny; ++i)
      if (rho[i] > rho[peak]) peak = i;
    const double y_peak = ys[peak];
    double num = 0.0, den = 0.0;
    for (int i = 0; i < ny; ++i) {
      if (std::abs(ys[i] - y_peak) > 6.0 * w) continue;
      const double f = (i == 0 || i == ny - 1) ? 0.5 : 1.0;
      num += f * ys[i] * rho[i];
      den += f * rho[i];
    }
    return num / den;
  };

  CentroidResult res{};
  res.spectrum_norm = spectrum_norm;
  res.y_centroid_in = centroid(rho_in);
  res.y_centroid_r = centroid(rho_r);
  res.gh_numeric = res.y_centroid_r - res.y_centroid_in;
  res.spm_reference =
      gh_stationary_phase(amplitudes_closed_form(kin0, central), kin0, central);
  res.relative_gap = std::abs(res.gh_numeric - res.spm_reference) / std::abs(res.spm_reference);
  return res;
}

PhaseDerivative phase_derivative_oracle(const StepParams& params) {
  const Kinematics kin = derive_kinematics(params);
  if (kin.zone != Zone::Tunneling)
    throw std::domain_error("phase_derivative_oracle: requires the tunneling zone");

  const double p = kin.p;
  auto phase_at = [&](double py) {
    const double theta = std::asin(py / p);
    const StepParams q{params.E, params.m, params.V0, theta};
    const Kinematics k2 = derive_kinematics(q);
    return amplitudes_closed_form(k2, q).phi_r;
  };

  double h = 1e-6 * p;
  h = std::min(h, 0.02 * (p - kin.p_y));
  if (kin.theta_c) {
    const double py_c = p * std::sin(*kin.theta_c);
    h = std::min(h, 0.02 * (kin.p_y - py_c));
  }
  if (!(h > 0.0))
    throw std::domain_error("phase_derivative_oracle: no room for a finite-difference step");

  auto central = [&](double step) {
    return -principal_delta(phase_at(kin.p_y + step), phase_at(kin.p_y - step)) / (2.0 * step);
  };
  const double d1 = central(h);
  const double d2 = central(h / 2.0);
  const double d4 = central(h / 4.0);
  const double rich_a = (4.0 * d2 - d1) / 3.0;
  const double rich_b = (4.0 * d4 - d2) / 3.0;

  PhaseDerivative out{};
  // Plain central difference when the two step levels already agree; the
  // Richardson extrapolant otherwise (kinematic-edge square-root behavior).
  out.value = std::abs(d1 - d2) <= 1e-6 * std::max(1.0, std::abs(d2)) ? d2 : rich_b;
  out.level_disagreement = std::abs(rich_a - rich_b) / std::max(1.0, std::abs(rich_b));
  out.step_ok = out.level_disagreement <= 1e-5;
  return out;
}

}  // namespace stepshift
