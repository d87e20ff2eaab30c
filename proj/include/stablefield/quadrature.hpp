// SPDX-License-Identifier: MIT
// Copyright (c) 2026 stablefield-cov contributors
#pragma once

#include <cstddef>
#include <functional>

namespace stablefield {

/// @brief Result of an adaptive quadrature: value plus an honest error bound.
struct QuadResult {
  double value = 0.0;
  double error_bound = 0.0;
  std::size_t evaluations = 0;
  bool converged = false;
};

/// @brief Adaptive Gauss-Kronrod (7-15) integrator with transforms for the
/// endpoint behaviours that occur throughout this library: algebraic
/// singularities x^{-p} (0 <= p < 1) at the left endpoint and power-law tails
/// x^{-q} (q > 1) at infinity.
class Quadrature {
 public:
  struct Options {
    double rel_tol = 1e-10;
    double abs_tol = 0.0;
    std::size_t max_intervals = 4000;
  };

  Quadrature() = default;
  explicit Quadrature(Options opt) : opt_(opt) {}

  Options& options() { return opt_; }
  const Options& options() const { return opt_; }

  /// Integrate f over the finite interval [a, b].
  QuadResult finite(const std::function<double(double)>& f, double a,
                    double b) const;

  /// Integrate f over [a, b] where f(x) ~ (x-a)^{-p} near a with 0 <= p < 1.
  /// Substitutes x = a + z^{1/(1-p)} to remove the singularity.  f receives
  /// the absolute abscissa, so for a != 0 the offset x - a saturates at
  /// rounding size |a|*eps; strongly singular integrands (p near 1) should
  /// be shifted by the caller so that a = 0 keeps the offset exact.
  QuadResult singular_left(const std::function<double(double)>& f, double a,
                           double b, double p) const;

  /// Integrate f over [a, infinity) where f(x) ~ x^{-q} for large x, q > 1,
  /// a > 0.  Maps x = a/z onto (0, 1], adding a singularity transform when
  /// 1 < q < 2.
  QuadResult upper_tail(const std::function<double(double)>& f, double a,
                        double q) const;

 private:
  Options opt_;
};

}  // namespace stablefield
