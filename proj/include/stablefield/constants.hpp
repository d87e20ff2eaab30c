// SPDX-License-Identifier: MIT
// Copyright (c) 2026 stablefield-cov contributors
//
// Numerical evaluation of the limiting constants named by classifier
// recipes: power series over row/column weight limits, one-dimensional
// beta-type integrals (closed form), double kernel integrals, and the mixed
// kernel series that appear along constant-direction limits.
#pragma once

#include "stablefield/classifier.hpp"
#include "stablefield/field_model.hpp"

namespace stablefield {

struct ConstOptions {
  double rel_tol = 1e-7;
  // When a recipe carries the published-but-inconsistent scale factor,
  // evaluate it verbatim (true) or with the internally consistent scale
  // (false).  See eval_cmixed for producing both.
  bool cmixed_printed_form = true;
};

struct ConstantValue {
  double value = 0.0;
  double error_bound = 0.0;
  bool converged = true;
};

// int_0^inf u^{-p} (1+u)^{-q} du, exactly, via the Beta function
// B(1-p, p+q-1).  Requires p < 1 and p + q > 1; throws NonIntegrableError
// otherwise.
double beta_integral_1d(double p, double q);

// C_V(beta) = int_0^inf V(w^{-beta}, 1) dw in closed Beta form; requires
// beta > 1 and beta * (alpha - 1) < 1.
double cv_beta_closed_form(double alpha, double beta);

// sum_{i,j>=0} sgn(w_ij) |w_ij|^{alpha-1} (1+i)^{-beta1(alpha-1)}
//              (1+j)^{-beta2(alpha-1)}.
ConstantValue signed_power_series(const WeightFamily& w, double alpha,
                                  double beta1, double beta2,
                                  double rel_tol = 1e-10);

// One-axis series over limiting weights:
//   Row: sum_i rowlim(i)^{weight_power} (1+i)^{-exponent}, Col likewise.
ConstantValue weight_power_series(const WeightFamily& w,
                                  const PowerSeriesSpec& spec,
                                  double rel_tol = 1e-10);

// Double kernel integral over unit-offset power atoms.
//   PosPos: int int V(t^{-b1} s^{-b2}, (1+t)^{-b1} (1+s)^{-b2}) dt ds
//   PosNeg: int int V((1+t)^{-b1} s^{-b2}, t^{-b1} (1+s)^{-b2}) dt ds
ConstantValue v_integral_2d(LagQuadrant quadrant, double alpha, double beta1,
                            double beta2, double rel_tol = 1e-7);

// prefactor * sum_{i,j} V(col_scale * A_j, row_scale * B_i) with
// A_j = collim(j)(1+j)^{-beta2}, B_i = rowlim(i)(1+i)^{-beta1}.
ConstantValue eval_cmixed(const WeightFamily& w, double alpha, double beta1,
                          double beta2, const CMixedSeriesC& recipe,
                          double rel_tol = 1e-7);

// Evaluate the limiting constant of a classified regime for a concrete
// weight family.  Throws ConstantEvaluationError for finite-support
// override specs and InvalidParameterError when the spec's parameters do
// not match the regime's.
ConstantValue constant_eval(const FieldSpec& spec, const Regime& regime,
                            const ConstOptions& opts = {});

}  // namespace stablefield
