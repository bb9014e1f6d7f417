#include "stepshift/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "stepshift/beam_oracle.hpp"
#include "stepshift/fw_angular.hpp"

namespace stepshift {

namespace {

constexpr double kPi = 3.14159265358979323846;
const double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<double> linspace(double start, double stop, int count) {
  std::vector<double> grid;
  grid.reserve(count);
  if (count == 1) {
    grid.push_back(start);
    return grid;
  }
  const double step = (stop - start) / (count - 1);
  for (int i = 0; i < count; ++i) grid.push_back(start + i * step);
  return grid;
}

std::string join_flags(const SweepRow& row) {
  std::string flags;
  auto add = [&](const char* f) {
    if (!flags.empty()) flags += ';';
    flags += f;
  };
  if (row.flag_divergent) add("divergent");
  if (row.flag_degenerate) add("degenerate");
  if (row.flag_out_of_zone) add("out_of_zone");
  return flags;
}

nlohmann::ordered_json json_number(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;  // CSV prints nan/inf; JSON has no literal for them
}

double principal(double angle) {
  while (angle > kPi) angle -= 2.0 * kPi;
  while (angle <= -kPi) angle += 2.0 * kPi;
  return angle;
}

}  // namespace

std::pair<double, double> default_shift_window(double E, double m, double V0) {
  const StepParams probe{E, m, V0, 0.0};
  validate(probe);
  const auto theta_c = critical_angle(probe);
  const double stop = kPi / 2.0 - 1e-3;
  double start;
  if (theta_c) {
    start = *theta_c + 1e-3;
  } else if (std::abs(E - V0) < m) {
    start = 1e-3;  // tunneling at every angle
  } else {
    throw std::domain_error("default_shift_window: no tunneling window at this energy");
  }
  if (!(start < stop))
    throw std::domain_error("default_shift_window: empty tunneling window");
  return {start, stop};
}

SweepConfig resolve(const SweepConfig& config) {
  SweepConfig out = config;
  validate({out.E, out.m, out.V0, 0.0});
  if (std::isnan(out.theta_start) || std::isnan(out.theta_stop)) {
    const auto [start, stop] = default_shift_window(out.E, out.m, out.V0);
    if (std::isnan(out.theta_start)) out.theta_start = start;
    if (std::isnan(out.theta_stop)) out.theta_stop = stop;
  }
  if (out.theta_count < 1 || out.E_count < 1 || out.zone_theta_count < 1)
    throw std::invalid_argument("SweepConfig: grid counts must be positive");
  if (!(out.theta_start >= 0.0 && out.theta_stop < kPi / 2.0 && out.theta_start <= out.theta_stop))
    throw std::invalid_argument("SweepConfig: theta grid must be sorted within [0, pi/2)");
  if (!(out.E_start > out.m && out.E_start <= out.E_stop))
    throw std::invalid_argument("SweepConfig: energy grid must be sorted with E > m");
  if (out.format != "csv" && out.format != "json")
    throw std::invalid_argument("SweepConfig: format must be csv or json");
  for (const auto& [key, value] : out.tolerances)
    if (!(value > 0.0))
      throw std::invalid_argument("SweepConfig: tolerance '" + key + "' must be positive");
  return out;
}

std::vector<SweepRow> run_shift_sweep(const SweepConfig& raw) {
  const SweepConfig config = resolve(raw);
  const std::vector<double> thetas =
      linspace(config.theta_start, config.theta_stop, config.theta_count);

  std::vector<SweepRow> rows;
  rows.reserve(thetas.size());
  for (double theta : thetas) {
    SweepRow row;
    row.theta_rad = theta;
    row.r = row.r_prime = row.t = row.t_prime = Complex(kNaN, kNaN);
    row.phi_r = row.phi_rp = kNaN;
    row.Sy_e = row.Sy_ir = row.Sy_total = row.Sy_spm = kNaN;
    row.Sx_up = row.Sx_down = row.Sx_helicity = row.dSx_tam = kNaN;

    const StepParams params{config.E, config.m, config.V0, theta};
    const Kinematics kin = derive_kinematics(params);
    row.zone = kin.zone;

    if (kin.zone == Zone::Degenerate) {
      row.flag_degenerate = true;
      rows.push_back(row);
      continue;
    }
    if (kin.zone == Zone::Klein) {
      row.flag_out_of_zone = true;
      rows.push_back(row);
      continue;
    }

    const ScatterAmplitudes amps = amplitudes_closed_form(kin, params);
    row.r = amps.r;
    row.r_prime = amps.r_prime;
    row.t = amps.t;
    row.t_prime = amps.t_prime;
    row.phi_r = amps.phi_r;
    row.phi_rp = amps.phi_r_prime;

    if (kin.zone != Zone::Tunneling || !(kin.p_y > 0.0)) {
      row.flag_out_of_zone = true;  // shift columns defined for tunneling, p_y > 0
      rows.push_back(row);
      continue;
    }

    row.Sy_ir = gh_interference(amps, kin, params);
    row.flag_divergent =
        kin.theta_c && std::abs(theta - *kin.theta_c) < kGhDivergenceWindow;
    if (row.flag_divergent) {
      const double inf = std::numeric_limits<double>::infinity();
      row.Sy_e = row.Sy_spm = row.Sy_total = inf;
    } else {
      row.Sy_e = gh_evanescent(amps, kin, params);
      row.Sy_spm = gh_stationary_phase(amps, kin, params);
      row.Sy_total = row.Sy_e + row.Sy_ir;
    }
    row.Sx_up = if_current(amps, kin, params, Spin::Up);
    row.Sx_down = if_current(amps, kin, params, Spin::Down);
    row.Sx_helicity = if_helicity(row.Sx_up, theta);
    row.dSx_tam = if_tam(amps, kin, params);
    rows.push_back(row);
  }
  return rows;
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
  std::string out =
      "theta_rad,zone,r_re,r_im,rp_re,rp_im,t_re,t_im,tp_re,tp_im,"
      "phi_r,phi_rp,Sy_e,Sy_ir,Sy_total,Sy_spm,Sx_up,Sx_down,Sx_helicity,dSx_tam,flags\n";
  for (const SweepRow& row : rows) {
    out += fmt(row.theta_rad);
    out += ',';
    out += to_string(row.zone);
    for (double v : {row.r.real(), row.r.imag(), row.r_prime.real(), row.r_prime.imag(),
                     row.t.real(), row.t.imag(), row.t_prime.real(), row.t_prime.imag(),
                     row.phi_r, row.phi_rp, row.Sy_e, row.Sy_ir, row.Sy_total, row.Sy_spm,
                     row.Sx_up, row.Sx_down, row.Sx_helicity, row.dSx_tam}) {
      out += ',';
      out += fmt(v);
    }
    out += ',';
    out += join_flags(row);
    out += '\n';
  }
  return out;
}

std::string sweep_to_json(const std::vector<SweepRow>& rows) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const SweepRow& row : rows) {
    nlohmann::ordered_json j;
    j["theta_rad"] = json_number(row.theta_rad);
    j["zone"] = to_string(row.zone);
    j["r_re"] = json_number(row.r.real());
    j["r_im"] = json_number(row.r.imag());
    j["rp_re"] = json_number(row.r_prime.real());
    j["rp_im"] = json_number(row.r_prime.imag());
    j["t_re"] = json_number(row.t.real());
    j["t_im"] = json_number(row.t.imag());
    j["tp_re"] = json_number(row.t_prime.real());
    j["tp_im"] = json_number(row.t_prime.imag());
    j["phi_r"] = json_number(row.phi_r);
    j["phi_rp"] = json_number(row.phi_rp);
    j["Sy_e"] = json_number(row.Sy_e);
    j["Sy_ir"] = json_number(row.Sy_ir);
    j["Sy_total"] = json_number(row.Sy_total);
    j["Sy_spm"] = json_number(row.Sy_spm);
    j["Sx_up"] = json_number(row.Sx_up);
    j["Sx_down"] = json_number(row.Sx_down);
    j["Sx_helicity"] = json_number(row.Sx_helicity);
    j["dSx_tam"] = json_number(row.dSx_tam);
    j["flags"] = join_flags(row);
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

ZoneMap run_zone_map(const SweepConfig& raw) {
  SweepConfig config = raw;
  validate({config.E_start, config.m, config.V0, 0.0});
  if (config.E_count < 1 || config.zone_theta_count < 1)
    throw std::invalid_argument("SweepConfig: grid counts must be positive");
  const std::vector<double> energies = linspace(config.E_start, config.E_stop, config.E_count);
  // Zone grid spans [0, pi/2) regardless of the shift window.
  const std::vector<double> thetas = linspace(0.0, kPi / 2.0 - 1e-4, config.zone_theta_count);
  return zone_map(energies, thetas, config.m, config.V0);
}

std::string zone_map_to_csv(const ZoneMap& map) {
  std::string out = "E,theta_rad,zone,E_boundary_upper,E_boundary_lower,theta_c,flags\n";
  const size_t nth = map.thetas.size();
  for (size_t ie = 0; ie < map.energies.size(); ++ie) {
    const auto& tc = map.theta_c[ie];
    for (size_t it = 0; it < nth; ++it) {
      out += fmt(map.energies[ie]);
      out += ',';
      out += fmt(map.thetas[it]);
      out += ',';
      out += to_string(map.cells[ie * nth + it]);
      out += ',';
      out += fmt(map.boundary_upper[it]);
      out += ',';
      out += fmt(map.boundary_lower[it]);
      out += ',';
      out += fmt(tc ? *tc : kNaN);
      out += ',';
      out += tc ? "" : "no_critical_angle";
      out += '\n';
    }
  }
  return out;
}

std::string zone_map_to_json(const ZoneMap& map) {
  nlohmann::ordered_json j;
  j["energies"] = map.energies;
  j["thetas"] = map.thetas;
  nlohmann::ordered_json cells = nlohmann::ordered_json::array();
  const size_t nth = map.thetas.size();
  for (size_t ie = 0; ie < map.energies.size(); ++ie) {
    nlohmann::ordered_json rowj = nlohmann::ordered_json::array();
    for (size_t it = 0; it < nth; ++it) rowj.push_back(to_string(map.cells[ie * nth + it]));
    cells.push_back(std::move(rowj));
  }
  j["zones"] = std::move(cells);
  j["E_boundary_upper"] = map.boundary_upper;
  j["E_boundary_lower"] = map.boundary_lower;
  nlohmann::ordered_json tcs = nlohmann::ordered_json::array();
  for (const auto& tc : map.theta_c) tcs.push_back(tc ? nlohmann::ordered_json(*tc) : nullptr);
  j["theta_c"] = std::move(tcs);
  return j.dump(2) + "\n";
}

namespace {

struct Suite {
  const SweepConfig& config;
  bool inject_fault;
  ValidationReport report;

  double tol(const std::string& name, double fallback) const {
    const auto it = config.tolerances.find(name);
    return it == config.tolerances.end() ? fallback : it->second;
  }

  void entry(const std::string& name, double residual, double tolerance,
             const std::string& note = "") {
    const bool pass = residual <= tolerance;
    report.entries.push_back({name, residual, tolerance, pass, note});
    report.all_pass = report.all_pass && pass;
  }
};

}  // namespace

ValidationReport run_validation(const SweepConfig& raw, bool inject_unitarity_fault) {
  const SweepConfig config = resolve(raw);
  Suite suite{config, inject_unitarity_fault, {}};

  const double E = config.E, m = config.m, V0 = config.V0;
  const std::vector<double> sweep_thetas =
      linspace(config.theta_start, config.theta_stop, config.theta_count);

  // Mixed-zone scan grid for the kinematic and amplitude identities.
  const std::vector<double> scan_E = linspace(std::max(1.1 * m, m + 0.1), 12.0 * m, 100);
  const std::vector<double> scan_theta = linspace(0.0, 1.5, 100);

  {  // dispersion p_y^2 + p_z^2 + m^2 = E^2
    double worst = 0.0;
    for (double Ev : scan_E)
      for (double th : scan_theta) {
        const Kinematics kin = derive_kinematics({Ev, m, V0, th});
        worst = std::max(worst, std::abs(kin.p_y * kin.p_y + kin.p_z * kin.p_z + m * m - Ev * Ev) /
                                    (Ev * Ev));
      }
    suite.entry("dispersion", worst, suite.tol("dispersion", 1e-12));
  }

  {  // kappa^2 = p_y^2 + m^2 - (E-V0)^2 in zone T
    double worst = 0.0;
    for (double Ev : scan_E)
      for (double th : scan_theta) {
        const Kinematics kin = derive_kinematics({Ev, m, V0, th});
        if (kin.zone != Zone::Tunneling) continue;
        const double target = kin.p_y * kin.p_y + m * m - (Ev - V0) * (Ev - V0);
        worst = std::max(worst, std::abs(kin.kappa * kin.kappa - target) /
                                    std::max(1.0, std::abs(target)));
      }
    suite.entry("kappa_identity", worst, suite.tol("kappa_identity", 1e-12));
  }

  {  // critical angle coincides with the zone boundary (bisection oracle)
    double worst = 0.0;
    for (double Ev : linspace(V0 + 1.01 * m, 12.0 * m, 40)) {
      const auto tc = critical_angle({Ev, m, V0, 0.0});
      if (!tc) continue;
      // root of f(theta) = E - V0 - m*(theta) by bisection
      auto f = [&](double th) {
        const double py = std::sqrt(Ev * Ev - m * m) * std::sin(th);
        return Ev - V0 - std::sqrt(py * py + m * m);
      };
      double lo = 0.0, hi = kPi / 2.0 - 1e-9;
      if (f(lo) < 0.0 || f(hi) > 0.0) continue;
      for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) >= 0.0 ? lo : hi) = mid;
      }
      worst = std::max(worst, std::abs(0.5 * (lo + hi) - *tc));
    }
    suite.entry("critical_angle_boundary", worst, suite.tol("critical_angle_boundary", 1e-10));
  }

  {  // closed-form amplitudes vs boundary-matching solve
    double worst = 0.0;
    int skipped = 0;
    for (double Ev : scan_E)
      for (double th : scan_theta) {
        const StepParams params{Ev, m, V0, th};
        const Kinematics kin = derive_kinematics(params);
        if (kin.zone != Zone::Diffusion && kin.zone != Zone::Tunneling) {
          ++skipped;
          continue;
        }
        ScatterAmplitudes closed, solved;
        try {
          closed = amplitudes_closed_form(kin, params);
          solved = boundary_match_oracle(kin, params);
        } catch (const std::exception&) {
          ++skipped;  // resonance anomaly or rank-deficient cell
          continue;
        }
        worst = std::max({worst, std::abs(closed.r - solved.r),
                          std::abs(closed.r_prime - solved.r_prime),
                          std::abs(closed.t - solved.t),
                          std::abs(closed.t_prime - solved.t_prime)});
      }
    suite.entry("closed_vs_solve", worst, suite.tol("closed_vs_solve", 1e-12),
                "skipped " + std::to_string(skipped) + " out-of-zone/anomalous cells");
  }

  {  // t' = r' from the independent solve
    double worst = 0.0;
    for (double th : sweep_thetas) {
      const StepParams params{E, m, V0, th};
      const Kinematics kin = derive_kinematics(params);
      if (kin.zone != Zone::Tunneling && kin.zone != Zone::Diffusion) continue;
      const ScatterAmplitudes solved = boundary_match_oracle(kin, params);
      worst = std::max(worst, std::abs(solved.t_prime - solved.r_prime));
    }
    suite.entry("tprime_equals_rprime", worst, suite.tol("tprime_equals_rprime", 1e-12));
  }

  {  // unitarity |r|^2 + |r'|^2 = 1 in zone T (fault-injection hook)
    double worst = 0.0;
    for (double th : sweep_thetas) {
      const StepParams params{E, m, V0, th};
      const Kinematics kin = derive_kinematics(params);
      if (kin.zone != Zone::Tunneling) continue;
      ScatterAmplitudes amps = amplitudes_closed_form(kin, params);
      if (suite.inject_fault) amps.r *= 1.0 + 1e-6;
      worst = std::max(worst, conservation_check(amps, kin, params).residual);
    }
    suite.entry("unitarity_tunneling", worst, suite.tol("unitarity_tunneling", 1e-10),
                suite.inject_fault ? "unitarity fault injected" : "");
  }

  {  // flux identity in zone D
    double worst = 0.0;
    for (double Ev : scan_E)
      for (double th : scan_theta) {
        const StepParams params{Ev, m, V0, th};
        const Kinematics kin = derive_kinematics(params);
        if (kin.zone != Zone::Diffusion) continue;
        const ScatterAmplitudes amps = amplitudes_closed_form(kin, params);
        worst = std::max(worst, conservation_check(amps, kin, params).residual);
      }
    suite.entry("flux_identity_diffusion", worst, suite.tol("flux_identity_diffusion", 1e-10));
  }

  {  // phi_r' = phi_r + pi/2 (mod 2pi) in zone T
    double worst = 0.0;
    for (double th : sweep_thetas) {
      const StepParams params{E, m, V0, th};
      const Kinematics kin = derive_kinematics(params);
      if (kin.zone != Zone::Tunneling) continue;
      const ScatterAmplitudes amps = amplitudes_closed_form(kin, params);
      worst = std::max(worst, std::abs(principal(amps.phi_r_prime - amps.phi_r - kPi / 2.0)));
    }
    suite.entry("phase_offset", worst, suite.tol("phase_offset", 1e-10));
  }

  double max_abs_sx = 0.0, max_dev_minus = 0.0, max_dev_plus = 0.0;
  {  // GH identity, SPM derivative check, IF invariants over the sweep
    double worst_identity = 0.0, worst_fd = 0.0;
    double worst_antisym = 0.0, worst_helicity = 0.0, worst_real = 0.0;
    double worst_closure = 0.0, worst_tam_match = 0.0;
    for (double th : sweep_thetas) {
      const StepParams params{E, m, V0, th};
      const Kinematics kin = derive_kinematics(params);
      if (kin.zone != Zone::Tunneling || !(kin.p_y > 0.0)) continue;
      const ScatterAmplitudes amps = amplitudes_closed_form(kin, params);

      const double spm = gh_stationary_phase(amps, kin, params);
      const double total = gh_evanescent(amps, kin, params) + gh_interference(amps, kin, params);
      worst_identity = std::max(worst_identity,
                                std::abs(total - spm) / std::max(1.0, std::abs(spm)));

      const PhaseDerivative fd = phase_derivative_oracle(params);
      worst_fd = std::max(worst_fd, std::abs(fd.value - spm) / std::abs(spm));

      const double sx_up = if_current(amps, kin, params, Spin::Up);
      const double sx_down = if_current(amps, kin, params, Spin::Down);
      const double dsx = if_tam(amps, kin, params);
      worst_antisym = std::max(worst_antisym, std::abs(sx_up + sx_down));
      worst_helicity = std::max(
          worst_helicity, std::abs(if_helicity(sx_up, th) - sx_up * std::cos(th)));
      const Complex bracket = std::conj(amps.t) * amps.t_prime_reduced -
                              std::conj(amps.t_prime_reduced) * amps.t;
      const Complex shift = Complex(0.0, 1.0) * (E + m) / (2.0 * (E - V0 + m)) * bracket;
      worst_real = std::max(worst_real, std::abs(shift.imag()));

      max_abs_sx = std::max(max_abs_sx, std::abs(sx_up));
      max_dev_minus = std::max(max_dev_minus, std::abs(sx_up - dsx));
      max_dev_plus = std::max(max_dev_plus, std::abs(sx_up + dsx));

      const AngularBudget budget = tam_budget(amps, params);
      worst_closure = std::max(worst_closure, std::abs(budget.J_z_in - budget.J_z_r));
      worst_tam_match = std::max(
          worst_tam_match, std::abs(budget.x0_offset_r - budget.x0_offset_in - dsx));
    }
    suite.entry("gh_identity", worst_identity, suite.tol("gh_identity", 1e-8));
    suite.entry("spm_finite_difference", worst_fd, suite.tol("spm_finite_difference", 1e-6));
    suite.entry("if_antisymmetry", worst_antisym, suite.tol("if_antisymmetry", 1e-12));
    suite.entry("if_helicity_projection", worst_helicity, suite.tol("if_helicity_projection", 1e-15));
    suite.entry("if_realness", worst_real, suite.tol("if_realness", 1e-14));
    suite.entry("tam_budget_closure", worst_closure, suite.tol("tam_budget_closure", 1e-14));
    suite.entry("tam_matches_if_tam", worst_tam_match, suite.tol("tam_matches_if_tam", 1e-14));
  }

  {  // measured Sif-vs-spinHall deviation (documented bound, not an identity)
    suite.entry("if_cross_method_max_abs_dev", max_dev_minus,
                suite.tol("if_cross_method_max_abs_dev", 1.125),
                "max|Sx+dSx| " + fmt(max_dev_plus) + ", peak |Sx| " + fmt(max_abs_sx));
  }

  {  // FW transformation checks
    double worst_unitarity = 0.0, worst_conj = 0.0;
    for (double Ev : linspace(m + 0.001, 12.0 * m, 20))
      for (double th : linspace(0.0, 1.5, 20)) {
        const FwCheckReport fw = fw_transform_check({Ev, m, V0, th});
        worst_unitarity = std::max(worst_unitarity, fw.unitarity_residual);
        worst_conj = std::max(worst_conj, fw.conjugation_residual);
      }
    suite.entry("fw_unitarity", worst_unitarity, suite.tol("fw_unitarity", 1e-12));
    suite.entry("fw_spin_conjugation", worst_conj, suite.tol("fw_spin_conjugation", 1e-12));
  }

  {  // Gaussian-beam centroid vs stationary phase
    const double theta0 = std::min(0.5 * (config.theta_start + config.theta_stop), 0.7);
    const Kinematics kin = derive_kinematics({E, m, V0, 0.0});
    const BeamSpec spec{theta0, 100.0 / kin.p, 1024, 5.0};
    const CentroidResult beam = synthesize_and_measure(spec, {E, m, V0, theta0});
    suite.entry("beam_centroid_gap", beam.relative_gap, suite.tol("beam_centroid_gap", 0.05),
                "gh_numeric " + fmt(beam.gh_numeric) + " vs spm " + fmt(beam.spm_reference));
  }

  return suite.report;
}

std::string validation_to_text(const ValidationReport& report) {
  std::ostringstream out;
  for (const auto& e : report.entries) {
    out << (e.pass ? "PASS" : "FAIL") << "  " << e.name << "  max residual " << fmt(e.residual)
        << "  (tol " << fmt(e.tolerance) << ")";
    if (!e.note.empty()) out << "  [" << e.note << "]";
    out << "\n";
  }
  out << (report.all_pass ? "overall: PASS" : "overall: FAIL") << "\n";
  return out.str();
}

std::string validation_to_json(const ValidationReport& report) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& e : report.entries) {
    nlohmann::ordered_json j;
    j["name"] = e.name;
    j["residual"] = json_number(e.residual);
    j["tolerance"] = e.tolerance;
    j["pass"] = e.pass;
    j["note"] = e.note;
    arr.push_back(std::move(j));
  }
  nlohmann::ordered_json root;
  root["checks"] = std::move(arr);
  root["overall_pass"] = report.all_pass;
  return root.dump(2) + "\n";
}

}  // namespace stepshift
