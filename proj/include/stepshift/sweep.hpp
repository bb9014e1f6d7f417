#pragma once

#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "stepshift/gh_shift.hpp"
#include "stepshift/if_shift.hpp"
#include "stepshift/kinematics.hpp"
#include "stepshift/scattering.hpp"

// Parameter sweeps, figure-data tables, machine-readable output and the
// invariant validation suite behind the command-line front end.

namespace stepshift {

struct SweepConfig {
  double E = 8.5;
  double m = 1.0;
  double V0 = 5.0;
  // Shift-sweep theta grid. NaN start/stop select the default window
  // (theta_c + 1e-3, pi/2 - 1e-3) used by the figure-data commands.
  double theta_start = std::numeric_limits<double>::quiet_NaN();
  double theta_stop = std::numeric_limits<double>::quiet_NaN();
  int theta_count = 2000;
  // Zone-map grid.
  double E_start = 1.05;
  double E_stop = 12.0;
  int E_count = 200;
  int zone_theta_count = 181;
  IncidentPolarization polarization = IncidentPolarization::SpinUp;
  std::string format = "csv";  // csv | json
  std::string out_path;        // empty: stdout
  std::map<std::string, double> tolerances;  // overrides for run_validation
};

struct SweepRow {
  double theta_rad = 0.0;
  Zone zone = Zone::Degenerate;
  Complex r, r_prime, t, t_prime;
  double phi_r, phi_rp;
  double Sy_e, Sy_ir, Sy_total, Sy_spm;
  double Sx_up, Sx_down, Sx_helicity, dSx_tam;
  bool flag_divergent = false;
  bool flag_degenerate = false;
  bool flag_out_of_zone = false;  // shift columns undefined at this point
};

// Default figure window (theta_c + 1e-3, pi/2 - 1e-3); when no critical angle
// exists but the zone is tunneling at all angles, the window starts at 1e-3.
// Throws std::domain_error when no tunneling window exists at this energy.
std::pair<double, double> default_shift_window(double E, double m, double V0);

// Resolves NaN grid fields against the default window and validates the grid.
SweepConfig resolve(const SweepConfig& config);

// One row per theta grid point; amplitude columns are populated in zones D
// and T, shift columns in zone T only. Non-finite columns always carry a flag.
std::vector<SweepRow> run_shift_sweep(const SweepConfig& config);

// Fixed column order; floats printed with 17 significant digits; every row
// (header included) newline-terminated. Byte-identical for identical configs.
std::string sweep_to_csv(const std::vector<SweepRow>& rows);
std::string sweep_to_json(const std::vector<SweepRow>& rows);

std::string zone_map_to_csv(const ZoneMap& map);
std::string zone_map_to_json(const ZoneMap& map);

ZoneMap run_zone_map(const SweepConfig& config);

struct ValidationEntry {
  std::string name;
  double residual;
  double tolerance;
  bool pass;
  std::string note;
};

struct ValidationReport {
  std::vector<ValidationEntry> entries;
  bool all_pass = true;
};

// Runs every module's invariant suite on the configured parameters.
// Tolerances come from built-in defaults overridden by config.tolerances
// (keys = entry names). inject_unitarity_fault perturbs the reflection
// amplitude before the unitarity check (fault-injection test hook).
ValidationReport run_validation(const SweepConfig& config, bool inject_unitarity_fault = false);

std::string validation_to_text(const ValidationReport& report);
std::string validation_to_json(const ValidationReport& report);

}  // namespace stepshift
