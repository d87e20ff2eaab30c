// SPDX-License-Identifier: MIT
// Copyright (c) 2026 stablefield-cov contributors
#pragma once

#include <cmath>

namespace stablefield {

/// @brief sign(x) * |x|^p, the odd power map.
inline double signed_power(double x, double p) {
  if (x == 0.0) return 0.0;
  const double m = std::pow(std::fabs(x), p);
  return x < 0.0 ? -m : m;
}

/// @brief Bivariate kernel x*y / (x^2 + y^2)^{(2-alpha)/2}, with value 0 at the
/// origin.
///
/// Summed over coefficient pairs it yields the spectral covariance of two
/// jointly alpha-stable linear combinations.  Key properties (exercised by the
/// test suite):
///  - symmetric in (x, y) and odd in each argument;
///  - positively homogeneous: V(c*x, c*y) = |c|^alpha * V(x, y);
///  - |V(x,y)| <= 2^{(alpha-2)/2} |x*y|^{alpha/2};
///  - |V(x,y)| <= |x|^{alpha-1} |y| whenever alpha >= 1 or |x| >= |y|;
///  - continuous at the origin for alpha in (0, 2].
inline double v_kernel(double alpha, double x, double y) {
  if (x == 0.0 || y == 0.0) return 0.0;
  double r2 = x * x + y * y;
  if (!(r2 > 0.0) || !std::isfinite(r2)) {
    // Rescale through homogeneity when x^2+y^2 under- or overflows.
    const double s = std::fmax(std::fabs(x), std::fabs(y));
    const double xs = x / s;
    const double ys = y / s;
    r2 = xs * xs + ys * ys;
    return std::pow(s, alpha) * xs * ys * std::pow(r2, 0.5 * alpha - 1.0);
  }
  return x * y * std::pow(r2, 0.5 * alpha - 1.0);
}

/// @brief Partial derivative of v_kernel in its first argument.
///
/// dV/dx = y * ((alpha-1) x^2 + y^2) / (x^2+y^2)^{(4-alpha)/2}; nonnegative
/// for y >= 0 and alpha >= 1, which makes the kernel monotone in each argument
/// on the positive cone for alpha >= 1.
inline double v_kernel_dx(double alpha, double x, double y) {
  if (y == 0.0) return 0.0;
  const double r2 = x * x + y * y;
  if (!(r2 > 0.0)) return 0.0;
  return y * ((alpha - 1.0) * x * x + y * y) *
         std::pow(r2, 0.5 * alpha - 2.0);
}

}  // namespace stablefield
