#pragma once

#include <cmath>
#include <functional>
#include <random>

// Shared helpers for the test suites. The quadrature here is the independent
// oracle side of the flux-quotient checks: it must not share code with the
// closed forms it validates.

namespace testsupport {

inline double simpson(double a, double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adaptive_simpson_impl(const std::function<double(double)>& f, double a, double b,
                                    double fa, double fm, double fb, double whole, double tol,
                                    int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = simpson(a, m, fa, flm, fm);
  const double right = simpson(m, b, fm, frm, fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_simpson_impl(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
         adaptive_simpson_impl(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol = 1e-12, int depth = 40) {
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  return adaptive_simpson_impl(f, a, b, fa, fm, fb, simpson(a, b, fa, fm, fb), tol, depth);
}

// Integral of an exponentially decaying integrand over [0, inf): truncates
// where e^{-2 kappa z} has fallen below 1e-18.
inline double integrate_decaying(const std::function<double(double)>& f, double kappa,
                                 double tol = 1e-12) {
  const double z_max = 42.0 / (2.0 * kappa);
  return adaptive_simpson(f, 0.0, z_max, tol);
}

inline double principal_angle(double a) {
  constexpr double pi = 3.14159265358979323846;
  while (a > pi) a -= 2.0 * pi;
  while (a <= -pi) a += 2.0 * pi;
  return a;
}

// Deterministic parameter generator for property-style tests.
struct ParamGen {
  std::mt19937 rng;
  explicit ParamGen(unsigned seed) : rng(seed) {}
  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  }
};

}  // namespace testsupport
