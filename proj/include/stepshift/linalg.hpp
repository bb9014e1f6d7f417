#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>

// Small fixed-size complex linear algebra for 4-spinors and 4x4 operators.
// Deliberately minimal: the whole library works on 4-component objects.

namespace stepshift {

using Complex = std::complex<double>;
using Spinor4 = std::array<Complex, 4>;
using Mat4 = std::array<std::array<Complex, 4>, 4>;

inline Mat4 mat4_zero() {
  Mat4 m{};
  return m;
}

inline Mat4 mat4_identity() {
  Mat4 m{};
  for (int i = 0; i < 4; ++i) m[i][i] = 1.0;
  return m;
}

inline Mat4 operator*(const Mat4& a, const Mat4& b) {
  Mat4 c{};
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) {
      const Complex aik = a[i][k];
      if (aik == Complex{}) continue;
      for (int j = 0; j < 4; ++j) c[i][j] += aik * b[k][j];
    }
  return c;
}

inline Spinor4 operator*(const Mat4& m, const Spinor4& v) {
  Spinor4 out{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out[i] += m[i][j] * v[j];
  return out;
}

inline Mat4 adjoint(const Mat4& m) {
  Mat4 out{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out[i][j] = std::conj(m[j][i]);
  return out;
}

inline double max_abs_diff(const Mat4& a, const Mat4& b) {
  double worst = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) worst = std::max(worst, std::abs(a[i][j] - b[i][j]));
  return worst;
}

// Conjugate-linear in the first argument: inner(a, b) = a† b.
inline Complex inner(const Spinor4& a, const Spinor4& b) {
  Complex s{};
  for (int i = 0; i < 4; ++i) s += std::conj(a[i]) * b[i];
  return s;
}

inline Spinor4 operator+(const Spinor4& a, const Spinor4& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]};
}

inline Spinor4 operator-(const Spinor4& a, const Spinor4& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]};
}

inline Spinor4 operator*(Complex s, const Spinor4& v) {
  return {s * v[0], s * v[1], s * v[2], s * v[3]};
}

inline double max_abs(const Spinor4& v) {
  double worst = 0.0;
  for (const auto& c : v) worst = std::max(worst, std::abs(c));
  return worst;
}

// Solves A x = b by Gaussian elimination with partial pivoting.
// Throws std::runtime_error when a pivot falls below pivot_tol times the
// largest matrix entry (numerically rank-deficient system).
inline Spinor4 solve4(Mat4 a, Spinor4 b, double pivot_tol = 1e-13) {
  double scale = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) scale = std::max(scale, std::abs(a[i][j]));
  if (scale == 0.0) throw std::runtime_error("solve4: zero matrix");

  for (int col = 0; col < 4; ++col) {
    int pivot = col;
    for (int row = col + 1; row < 4; ++row)
      if (std::abs(a[row][col]) > std::abs(a[pivot][col])) pivot = row;
    if (std::abs(a[pivot][col]) < pivot_tol * scale)
      throw std::runtime_error("solve4: numerically rank-deficient system");
    if (pivot != col) {
      std::swap(a[pivot], a[col]);
      std::swap(b[pivot], b[col]);
    }
    for (int row = col + 1; row < 4; ++row) {
      const Complex f = a[row][col] / a[col][col];
      if (f == Complex{}) continue;
      a[row][col] = 0.0;
      for (int j = col + 1; j < 4; ++j) a[row][j] -= f * a[col][j];
      b[row] -= f * b[col];
    }
  }
  Spinor4 x{};
  for (int row = 3; row >= 0; --row) {
    Complex s = b[row];
    for (int j = row + 1; j < 4; ++j) s -= a[row][j] * x[j];
    x[row] = s / a[row][row];
  }
  return x;
}

}  // namespace stepshift
