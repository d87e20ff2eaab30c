// SPDX-License-Identifier: MIT
// Copyright (c) 2026 stablefield-cov contributors
#pragma once

#include <functional>

#include "stablefield/quadrature.hpp"

namespace stablefield {

/// @brief Result of an infinite-series evaluation with a certified bound.
struct SumResult {
  double value = 0.0;
  double error_bound = 0.0;
  long long terms = 0;
  bool converged = false;
};

/// @brief Hurwitz-style shifted zeta sum: sum_{n>=0} (x+n)^{-q} for q > 1,
/// x > 0.  Uses an Euler-Maclaurin expansion after an explicit prefix; the
/// truncation error is far below 1e-12 relative for q >= 1.01.
double hurwitz_zeta(double q, double x);

/// @brief sum_{i>=0} (1 + a/(1+i+shift))^p (1+i+shift)^{-q} for |a| < 1,
/// q > 1, computed exactly through the binomial expansion of (1+u)^p into
/// shifted zeta values.  The bound covers the truncated binomial tail.
SumResult binomial_weight_sum(double a, double p, double q, double rel_tol,
                              long long shift = 0);

/// @brief sum_{i,j>=0} (1 + a/(1+i+s1) + b/(1+j+s2))^p
///        * (1+i+s1)^{-q1} (1+j+s2)^{-q2},  |a|+|b| < 1, q1,q2 > 1.
/// Expands the joint binomial; exact up to the certified tail bound.
SumResult binomial_weight_sum_2d(double a, double b, double p, double q1,
                                 double q2, double rel_tol, long long s1 = 0,
                                 long long s2 = 0);

/// @brief Sum f(i) for integer i >= start where f is nonnegative and
/// nonincreasing on [mono_from, infinity) with an integrable power-law tail
/// f(t) ~ t^{-tail_exponent}.
///
/// After an explicit prefix the remainder is bracketed by the integral
/// comparison sum_{i>=K} f(i) in [int_K f, int_{K-1} f]; when `convex` is
/// set (f also convex on the tail) the tighter midpoint/trapezoid bracket
/// [int_K f + f(K)/2, int_{K-1/2} f] is used.  The prefix is doubled until
/// the bracket half-width plus quadrature error meets rel_tol, or the term
/// budget runs out (converged = false, bound still honest).
SumResult sum_monotone_tail(const std::function<double(double)>& f,
                            long long start, long long mono_from,
                            double tail_exponent, double rel_tol,
                            bool convex, const Quadrature& quad,
                            long long max_terms = 2000000);

/// @brief Sum f(i) for i in [start, infinity) where f need not be monotone
/// but the caller supplies tail_majorant(K) >= sum_{i>=K} |f(i)|.  Terms are
/// accumulated until the majorant meets rel_tol or the budget is exhausted.
SumResult sum_with_majorant(const std::function<double(long long)>& f,
                            long long start,
                            const std::function<double(long long)>& tail_majorant,
                            double rel_tol, long long max_terms = 2000000);

}  // namespace stablefield
