// stepshift: relativistic step-potential scattering and beam-shift sweeps.
//
// Subcommands: zones | coeffs | ghshift | ifshift | beam | validate
// Defaults reproduce the reference figure data (E = 8.5 m, V0 = 5 m, m = 1,
// 2000 theta points across the tunneling window).

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "stepshift/beam_oracle.hpp"
#include "stepshift/sweep.hpp"

namespace {

constexpr double kDegree = 3.14159265358979323846 / 180.0;

struct CliOptions {
  stepshift::SweepConfig config;
  std::string config_path;
  std::vector<std::string> tolerance_args;
  bool degrees = false;
  // beam
  double theta0 = 0.7;
  double waist_p = 100.0;
  int n_modes = 1024;
  double span = 5.0;
  bool inject_unitarity_fault = false;
};

void add_common_flags(CLI::App* cmd, CliOptions& opt) {
  cmd->add_option("--E", opt.config.E, "Total energy (units of m)");
  cmd->add_option("--m", opt.config.m, "Rest mass");
  cmd->add_option("--V0", opt.config.V0, "Step height (units of m)");
  cmd->add_option("--theta-start", opt.config.theta_start, "Sweep start angle");
  cmd->add_option("--theta-stop", opt.config.theta_stop, "Sweep stop angle");
  cmd->add_option("--theta-count", opt.config.theta_count, "Sweep point count");
  cmd->add_option("--format", opt.config.format, "Output format: csv | json");
  cmd->add_option("--out", opt.config.out_path, "Output path (default stdout)");
  cmd->add_option("--config", opt.config_path, "JSON config file; its values override flags");
  cmd->add_option("--tolerance", opt.tolerance_args, "Validation tolerance override KEY=VAL")
      ->take_all();
  cmd->add_flag("--degrees", opt.degrees, "Interpret angle inputs as degrees");
  std::string pol;
  cmd->add_option_function<std::string>(
         "--polarization",
         [&opt](const std::string& value) {
           using P = stepshift::IncidentPolarization;
           if (value == "up") opt.config.polarization = P::SpinUp;
           else if (value == "down") opt.config.polarization = P::SpinDown;
           else if (value == "helicity+") opt.config.polarization = P::HelicityPlus;
           else if (value == "helicity-") opt.config.polarization = P::HelicityMinus;
           else throw CLI::ValidationError("--polarization must be up|down|helicity+|helicity-");
         },
         "Incident polarization: up|down|helicity+|helicity-");
}

void apply_config_file(CliOptions& opt) {
  if (opt.config_path.empty()) return;
  std::ifstream in(opt.config_path);
  if (!in) throw std::runtime_error("cannot open config file: " + opt.config_path);
  nlohmann::json j;
  in >> j;
  auto get = [&j](const char* key, auto& target) {
    if (j.contains(key)) target = j.at(key).template get<std::decay_t<decltype(target)>>();
  };
  get("E", opt.config.E);
  get("m", opt.config.m);
  get("V0", opt.config.V0);
  get("theta_start", opt.config.theta_start);
  get("theta_stop", opt.config.theta_stop);
  get("theta_count", opt.config.theta_count);
  get("E_start", opt.config.E_start);
  get("E_stop", opt.config.E_stop);
  get("E_count", opt.config.E_count);
  get("zone_theta_count", opt.config.zone_theta_count);
  get("format", opt.config.format);
  get("out", opt.config.out_path);
  get("degrees", opt.degrees);
  get("theta0", opt.theta0);
  get("waist_p", opt.waist_p);
  get("n_modes", opt.n_modes);
  get("span", opt.span);
  if (j.contains("polarization")) {
    const std::string value = j.at("polarization").get<std::string>();
    using P = stepshift::IncidentPolarization;
    if (value == "up") opt.config.polarization = P::SpinUp;
    else if (value == "down") opt.config.polarization = P::SpinDown;
    else if (value == "helicity+") opt.config.polarization = P::HelicityPlus;
    else if (value == "helicity-") opt.config.polarization = P::HelicityMinus;
    else throw std::runtime_error("config: bad polarization value");
  }
  if (j.contains("tolerances"))
    for (const auto& [key, value] : j.at("tolerances").items())
      opt.config.tolerances[key] = value.get<double>();
}

void finalize(CliOptions& opt) {
  apply_config_file(opt);
  for (const std::string& kv : opt.tolerance_args) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("--tolerance expects KEY=VAL, got: " + kv);
    opt.config.tolerances[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
  }
  if (opt.degrees) {
    if (!std::isnan(opt.config.theta_start)) opt.config.theta_start *= kDegree;
    if (!std::isnan(opt.config.theta_stop)) opt.config.theta_stop *= kDegree;
    opt.theta0 *= kDegree;
  }
}

void emit(const stepshift::SweepConfig& config, const std::string& payload) {
  if (config.out_path.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream out(config.out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output path: " + config.out_path);
  out << payload;
}

int run_sweep_command(CliOptions& opt) {
  finalize(opt);
  const auto rows = stepshift::run_shift_sweep(opt.config);
  emit(opt.config, opt.config.format == "json" ? stepshift::sweep_to_json(rows)
                                               : stepshift::sweep_to_csv(rows));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Relativistic electron scattering at a potential step: "
               "zone maps, scattering amplitudes, GH and IF beam shifts"};
  app.require_subcommand(1);

  CliOptions opt;

  CLI::App* zones = app.add_subcommand("zones", "Energy-zone map and boundary curves");
  add_common_flags(zones, opt);
  zones->add_option("--E-start", opt.config.E_start, "Energy grid start");
  zones->add_option("--E-stop", opt.config.E_stop, "Energy grid stop");
  zones->add_option("--E-count", opt.config.E_count, "Energy grid count");
  zones->add_option("--zone-theta-count", opt.config.zone_theta_count, "Angle grid count");

  CLI::App* coeffs = app.add_subcommand("coeffs", "Scattering amplitudes across [0, pi/2)");
  add_common_flags(coeffs, opt);

  CLI::App* ghshift = app.add_subcommand("ghshift", "Longitudinal GH shift sweep (three routes)");
  add_common_flags(ghshift, opt);

  CLI::App* ifshift = app.add_subcommand("ifshift", "Transverse IF shift sweep (both routes)");
  add_common_flags(ifshift, opt);

  CLI::App* beam = app.add_subcommand("beam", "Gaussian-beam centroid check of the GH shift");
  add_common_flags(beam, opt);
  beam->add_option("--theta0", opt.theta0, "Central incidence angle");
  beam->add_option("--waist-p", opt.waist_p, "Beam waist in units of 1/p (w*p)");
  beam->add_option("--n-modes", opt.n_modes, "Spectral sample count");
  beam->add_option("--span", opt.span, "Spectral half-width in units of 1/w");

  CLI::App* validate_cmd = app.add_subcommand("validate", "Run every module's invariant suite");
  add_common_flags(validate_cmd, opt);
  validate_cmd
      ->add_flag("--inject-unitarity-fault", opt.inject_unitarity_fault,
                 "Perturb amplitudes before the unitarity check (test hook)")
      ->group("");  // hidden

  CLI11_PARSE(app, argc, argv);

  try {
    if (zones->parsed()) {
      finalize(opt);
      const stepshift::ZoneMap map = stepshift::run_zone_map(opt.config);
      emit(opt.config, opt.config.format == "json" ? stepshift::zone_map_to_json(map)
                                                   : stepshift::zone_map_to_csv(map));
      return 0;
    }
    if (coeffs->parsed()) {
      // Amplitudes exist in zones D and T; scan the whole quadrant by default.
      if (std::isnan(opt.config.theta_start)) opt.config.theta_start = 0.0;
      if (std::isnan(opt.config.theta_stop)) opt.config.theta_stop = 1.5697963267948966;
      return run_sweep_command(opt);
    }
    if (ghshift->parsed() || ifshift->parsed()) return run_sweep_command(opt);
    if (beam->parsed()) {
      finalize(opt);
      const stepshift::StepParams params{opt.config.E, opt.config.m, opt.config.V0, opt.theta0};
      const stepshift::Kinematics kin = stepshift::derive_kinematics({opt.config.E, opt.config.m, opt.config.V0, 0.0});
      const stepshift::BeamSpec spec{opt.theta0, opt.waist_p / kin.p, opt.n_modes, opt.span};
      const stepshift::Spin spin =
          opt.config.polarization == stepshift::IncidentPolarization::SpinDown
              ? stepshift::Spin::Down
              : stepshift::Spin::Up;
      const stepshift::CentroidResult res = stepshift::synthesize_and_measure(spec, params, spin);
      nlohmann::ordered_json j;
      j["theta0"] = opt.theta0;
      j["waist_p"] = opt.waist_p;
      j["n_modes"] = opt.n_modes;
      j["span"] = opt.span;
      j["polarization"] = stepshift::to_string(opt.config.polarization);
      j["y_centroid_in"] = res.y_centroid_in;
      j["y_centroid_r"] = res.y_centroid_r;
      j["gh_numeric"] = res.gh_numeric;
      j["spm_reference"] = res.spm_reference;
      j["relative_gap"] = res.relative_gap;
      if (opt.config.format == "json") {
        emit(opt.config, j.dump(2) + "\n");
      } else {
        std::string text;
        for (const auto& [key, value] : j.items())
          text += key + " = " + value.dump() + "\n";
        emit(opt.config, text);
      }
      return 0;
    }
    if (validate_cmd->parsed()) {
      finalize(opt);
      const stepshift::ValidationReport report =
          stepshift::run_validation(opt.config, opt.inject_unitarity_fault);
      emit(opt.config, opt.config.format == "json" ? stepshift::validation_to_json(report)
                                                   : stepshift::validation_to_text(report));
      return report.all_pass ? 0 : 1;
    }
  } catch (const std::exception& ex) {
    std::cerr << "stepshift: " << ex.what() << "\n";
    return 2;
  }
  return 0;
}
