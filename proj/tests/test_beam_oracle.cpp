#include "stepshift/beam_oracle.hpp"

#include <cmath>

#include "doctest.h"
#include "stepshift/gh_shift.hpp"
#include "support.hpp"

using namespace stepshift;

namespace {
const StepParams kParams{8.5, 1.0, 5.0, 0.7};
const double kP = std::sqrt(8.5 * 8.5 - 1.0);
}  // namespace

TEST_CASE("beam spec validation") {
  CHECK_THROWS_AS(synthesize_and_measure({0.7, 40.0 / kP, 1024, 5.0}, kParams),
                  std::invalid_argument);  // w*p < 50
  CHECK_THROWS_AS(synthesize_and_measure({0.7, 100.0 / kP, 128, 5.0}, kParams),
                  std::invalid_argument);  // too few modes
  CHECK_THROWS_AS(synthesize_and_measure({0.7, 100.0 / kP, 1024, 2.0}, kParams),
                  std::invalid_argument);  // span too small
  // central angle below the critical angle: diffusion zone
  CHECK_THROWS_AS(synthesize_and_measure({0.2, 100.0 / kP, 1024, 5.0}, kParams),
                  std::domain_error);
  // spectrum not clear of the critical angle
  CHECK_THROWS_AS(synthesize_and_measure({0.40863785509759243 + 0.02, 100.0 / kP, 1024, 5.0},
                                         kParams),
                  std::domain_error);
  // spectrum reaches grazing incidence
  CHECK_THROWS_AS(synthesize_and_measure({1.5707, 100.0 / kP, 1024, 5.0}, kParams),
                  std::domain_error);
}

TEST_CASE("centroid shift converges to the stationary-phase value") {
  const CentroidResult r100 = synthesize_and_measure({0.7, 100.0 / kP, 1024, 5.0}, kParams);
  CHECK(r100.relative_gap < 0.05);
  CHECK(r100.spm_reference == doctest::Approx(0.3882982808262462).epsilon(1e-10));
  CHECK(std::abs(r100.y_centroid_in) < 0.1 * (100.0 / kP));
  CHECK(r100.gh_numeric > 0.0);
  CHECK(std::abs(r100.spectrum_norm - 1.0) < 1e-10);

  // Waist-doubling sequence: the gap shrinks across the last three doublings.
  const CentroidResult r200 = synthesize_and_measure({0.7, 200.0 / kP, 1024, 5.0}, kParams);
  const CentroidResult r400 = synthesize_and_measure({0.7, 400.0 / kP, 1024, 5.0}, kParams);
  const CentroidResult r800 = synthesize_and_measure({0.7, 800.0 / kP, 1024, 5.0}, kParams);
  CHECK(r200.relative_gap < r100.relative_gap);
  CHECK(r400.relative_gap < r200.relative_gap);
  CHECK(r800.relative_gap < r400.relative_gap);
}

TEST_CASE("spin-down beam reproduces the same longitudinal shift") {
  const CentroidResult up = synthesize_and_measure({0.7, 100.0 / kP, 512, 5.0}, kParams, Spin::Up);
  const CentroidResult dn =
      synthesize_and_measure({0.7, 100.0 / kP, 512, 5.0}, kParams, Spin::Down);
  CHECK(up.gh_numeric == doctest::Approx(dn.gh_numeric).epsilon(1e-6));
}

TEST_CASE("beam synthesis is deterministic") {
  const CentroidResult a = synthesize_and_measure({0.7, 100.0 / kP, 512, 5.0}, kParams);
  const CentroidResult b = synthesize_and_measure({0.7, 100.0 / kP, 512, 5.0}, kParams);
  CHECK(a.gh_numeric == b.gh_numeric);
  CHECK(a.y_centroid_in == b.y_centroid_in);
  CHECK(a.y_centroid_r == b.y_centroid_r);
}

TEST_CASE("per-mode unitarity across the spectral window") {
  const double w = 100.0 / kP;
  const double py0 = kP * std::sin(0.7);
  for (int k = 0; k <= 64; ++k) {
    const double py = py0 - 5.0 / w + k * (10.0 / w) / 64.0;
    const StepParams p{8.5, 1.0, 5.0, std::asin(py / kP)};
    const Kinematics kin = derive_kinematics(p);
    REQUIRE(kin.zone == Zone::Tunneling);
    const ScatterAmplitudes amps = amplitudes_closed_form(kin, p);
    CHECK(std::abs(std::norm(amps.r) + std::norm(amps.r_prime) - 1.0) < 1e-10);
  }
}

TEST_CASE("phase-derivative oracle") {
  SUBCASE("matches the closed form across the sweep") {
    for (double theta : {0.41, 0.6, 1.0, 1.45, 1.5697963267948966}) {
      const StepParams p{8.5, 1.0, 5.0, theta};
      const Kinematics kin = derive_kinematics(p);
      const double closed =
          gh_stationary_phase(amplitudes_closed_form(kin, p), kin, p);
      const PhaseDerivative fd = phase_derivative_oracle(p);
      CHECK(fd.step_ok);
      CHECK(fd.value == doctest::Approx(closed).epsilon(1e-6));
    }
  }
  SUBCASE("rejects non-tunneling input") {
    CHECK_THROWS_AS(phase_derivative_oracle({8.5, 1.0, 5.0, 0.2}), std::domain_error);
  }
}
