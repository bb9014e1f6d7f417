#include "stepshift/gh_shift.hpp"

#include <cmath>

#include "doctest.h"
#include "stepshift/beam_oracle.hpp"
#include "support.hpp"

using namespace stepshift;

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kThetaC = 0.40863785509759243;  // E=8.5, m=1, V0=5

struct Point {
  StepParams params;
  Kinematics kin;
  ScatterAmplitudes amps;
};

Point at(double theta, double E = 8.5, double V0 = 5.0) {
  const StepParams p{E, 1.0, V0, theta};
  const Kinematics kin = derive_kinematics(p);
  return {p, kin, amplitudes_closed_form(kin, p)};
}

// Renard quotient by adaptive quadrature of the transmitted current.
double evanescent_oracle(const Point& pt) {
  auto integrand = [&](double z) {
    return current(WaveCombination::Transmitted, pt.amps, pt.kin, pt.params, z).j_y;
  };
  const double flux = testsupport::integrate_decaying(integrand, pt.kin.kappa);
  const double jz_r =
      std::abs(current(WaveCombination::Reflected, pt.amps, pt.kin, pt.params, 0.0).j_z);
  return flux / jz_r;
}

// lambda_z-averaged interference flux divided by the incident current:
// <P_ir> = (1/lambda) ∫_0^lambda [∫_{-l}^0 j_ir dz] dl, both by quadrature.
double interference_oracle(const Point& pt) {
  auto j_ir = [&](double z) {
    return current(WaveCombination::Interference, pt.amps, pt.kin, pt.params, z).j_y;
  };
  const double lambda_z = 2.0 * kPi / pt.kin.p_z;
  auto p_ir = [&](double l) {
    return l == 0.0 ? 0.0 : testsupport::adaptive_simpson(j_ir, -l, 0.0, 1e-13);
  };
  const double averaged = testsupport::adaptive_simpson(p_ir, 0.0, lambda_z, 1e-12) / lambda_z;
  const double jz_in = current(WaveCombination::Incident, pt.amps, pt.kin, pt.params, 0.0).j_z;
  return averaged / jz_in;
}

}  // namespace

TEST_CASE("evanescent-flux shift against the quadrature oracle") {
  for (double theta : {0.45, 0.6, 0.9, 1.3}) {
    const Point pt = at(theta);
    const double closed = gh_evanescent(pt.amps, pt.kin, pt.params);
    const double oracle = evanescent_oracle(pt);
    CHECK(closed == doctest::Approx(oracle).epsilon(1e-8));
  }
  // Frozen values.
  CHECK(gh_evanescent(at(0.6).amps, at(0.6).kin, at(0.6).params) ==
        doctest::Approx(0.28942726575006705).epsilon(1e-10));
  CHECK(gh_evanescent(at(0.45).amps, at(0.45).kin, at(0.45).params) ==
        doctest::Approx(0.903350965562478).epsilon(1e-10));
}

TEST_CASE("interference shift against the flux-average oracle") {
  for (double theta : {0.45, 0.6, 1.0}) {
    const Point pt = at(theta);
    const double closed = gh_interference(pt.amps, pt.kin, pt.params);
    CHECK(closed == doctest::Approx(interference_oracle(pt)).epsilon(1e-8));
  }
  CHECK(gh_interference(at(0.6).amps, at(0.6).kin, at(0.6).params) ==
        doctest::Approx(0.1660567021886885).epsilon(1e-10));
}

TEST_CASE("interference shift vanishes at the critical angle") {
  double prev = 1e9;
  for (int k = 1; k <= 5; ++k) {
    const Point pt = at(kThetaC + std::pow(10.0, -k));
    const double s = gh_interference(pt.amps, pt.kin, pt.params);
    CHECK(std::abs(s) < prev);
    prev = std::abs(s);
  }
  CHECK(prev < 1e-2);
}

TEST_CASE("stationary-phase closed form") {
  SUBCASE("frozen values") {
    const Point p6 = at(0.6);
    CHECK(gh_stationary_phase(p6.amps, p6.kin, p6.params) ==
          doctest::Approx(0.45548396793875556).epsilon(1e-10));
    const Point p45 = at(0.45);
    CHECK(gh_stationary_phase(p45.amps, p45.kin, p45.params) ==
          doctest::Approx(0.9880423424958291).epsilon(1e-10));
  }
  SUBCASE("equals the finite-difference phase derivative") {
    for (double theta : {0.42, 0.6, 0.9, 1.2, 1.5}) {
      const Point pt = at(theta);
      const double closed = gh_stationary_phase(pt.amps, pt.kin, pt.params);
      const PhaseDerivative fd = phase_derivative_oracle(pt.params);
      CHECK(fd.step_ok);
      CHECK(closed == doctest::Approx(fd.value).epsilon(1e-6));
    }
  }
  SUBCASE("identical shift from the spin-flip phase") {
    // phi_r' = phi_r + pi/2 exactly, so -d(phi_r')/dp_y gives the same shift.
    const Point pt = at(0.6);
    const double h = 1e-6 * pt.kin.p;
    auto phi_rp = [&](double py) {
      const double theta = std::asin(py / pt.kin.p);
      const StepParams q{8.5, 1.0, 5.0, theta};
      return amplitudes_closed_form(derive_kinematics(q), q).phi_r_prime;
    };
    const double fd =
        -testsupport::principal_angle(phi_rp(pt.kin.p_y + h) - phi_rp(pt.kin.p_y - h)) /
        (2.0 * h);
    CHECK(fd == doctest::Approx(gh_stationary_phase(pt.amps, pt.kin, pt.params)).epsilon(1e-6));
  }
  SUBCASE("diverges monotonically toward the critical angle") {
    double prev = 0.0;
    for (int k = 2; k <= 6; ++k) {
      const Point pt = at(kThetaC + std::pow(10.0, -k));
      const double s = gh_stationary_phase(pt.amps, pt.kin, pt.params);
      CHECK(s > prev);
      prev = s;
    }
    CHECK(prev > 100.0);
  }
}

TEST_CASE("the three routes satisfy the sum identity") {
  testsupport::ParamGen gen(99);
  for (int i = 0; i < 60; ++i) {
    const double theta = gen.uniform(kThetaC + 1e-3, kPi / 2.0 - 1e-3);
    const Point pt = at(theta);
    const double total = gh_evanescent(pt.amps, pt.kin, pt.params) +
                         gh_interference(pt.amps, pt.kin, pt.params);
    const double spm = gh_stationary_phase(pt.amps, pt.kin, pt.params);
    CHECK(std::abs(total - spm) <= 1e-8 * std::max(1.0, std::abs(spm)));
  }
  // Also at a second fixed energy with a tunneling window.
  for (double theta : {1.2, 1.3, 1.4}) {
    const Point pt = at(theta, 3.0, 5.0);  // T via the Klein-side boundary
    REQUIRE(pt.kin.zone == Zone::Tunneling);
    const double total = gh_evanescent(pt.amps, pt.kin, pt.params) +
                         gh_interference(pt.amps, pt.kin, pt.params);
    const double spm = gh_stationary_phase(pt.amps, pt.kin, pt.params);
    CHECK(std::abs(total - spm) <= 1e-8 * std::max(1.0, std::abs(spm)));
  }
}

TEST_CASE("near-grazing dominance of the interference term") {
  for (double theta = kPi / 2.0 - 0.05; theta < kPi / 2.0 - 1e-3; theta += 0.005) {
    const Point pt = at(theta);
    CHECK(std::abs(gh_interference(pt.amps, pt.kin, pt.params)) >
          std::abs(gh_evanescent(pt.amps, pt.kin, pt.params)));
  }
}

TEST_CASE("shift scales as 1/m under a global rescaling") {
  const Point base = at(0.6);
  const double s1 = gh_stationary_phase(base.amps, base.kin, base.params);
  const StepParams scaled{8.5 * 2.0, 2.0, 5.0 * 2.0, 0.6};
  const Kinematics kin2 = derive_kinematics(scaled);
  const double s2 = gh_stationary_phase(amplitudes_closed_form(kin2, scaled), kin2, scaled);
  CHECK(s2 == doctest::Approx(s1 / 2.0).epsilon(1e-12));
}

TEST_CASE("gh_report") {
  SUBCASE("reference point") {
    const GhReport rep = gh_report({8.5, 1.0, 5.0, 0.6});
    CHECK(rep.valid);
    CHECK_FALSE(rep.divergent);
    CHECK(rep.S_y_total == rep.S_y_e + rep.S_y_ir);
    CHECK(std::abs(rep.S_y_total - rep.S_y_spm) <= 1e-8 * std::abs(rep.S_y_spm));
  }
  SUBCASE("nearer the divergence") {
    const GhReport rep = gh_report({8.5, 1.0, 5.0, 0.45});
    CHECK(rep.valid);
    CHECK(std::abs(rep.S_y_total - rep.S_y_spm) <= 1e-8 * std::abs(rep.S_y_spm));
  }
  SUBCASE("divergence window is flagged, not enumerated") {
    const GhReport rep = gh_report({8.5, 1.0, 5.0, kThetaC + 5e-4});
    CHECK(rep.divergent);
    CHECK_FALSE(rep.valid);
    CHECK(std::isinf(rep.S_y_spm));
    CHECK(std::isinf(rep.S_y_e));
    CHECK(std::isfinite(rep.S_y_ir));
  }
  SUBCASE("diffusion-zone input is rejected") {
    CHECK_THROWS_AS(gh_report({8.5, 1.0, 5.0, 0.2}), std::domain_error);
  }
  SUBCASE("degenerate input is rejected") {
    CHECK_THROWS_AS(gh_report({6.0, 1.0, 5.0, 0.0}), std::domain_error);
  }
}

TEST_CASE("preconditions of the flux routes") {
  // p_y = 0 inside the all-angle tunneling band: no lateral shift to define.
  const StepParams p{5.2, 1.0, 5.0, 0.0};
  const Kinematics kin = derive_kinematics(p);
  REQUIRE(kin.zone == Zone::Tunneling);
  const ScatterAmplitudes amps = amplitudes_closed_form(kin, p);
  CHECK_THROWS_AS(gh_evanescent(amps, kin, p), std::domain_error);
  // Zone D rejection for every route.
  const StepParams d{8.5, 1.0, 5.0, 0.2};
  const Kinematics kin_d = derive_kinematics(d);
  const ScatterAmplitudes amps_d = amplitudes_closed_form(kin_d, d);
  CHECK_THROWS_AS(gh_evanescent(amps_d, kin_d, d), std::domain_error);
  CHECK_THROWS_AS(gh_interference(amps_d, kin_d, d), std::domain_error);
  CHECK_THROWS_AS(gh_stationary_phase(amps_d, kin_d, d), std::domain_error);
}
