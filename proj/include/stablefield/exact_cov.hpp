// SPDX-License-Identifier: MIT
// Copyright (c) 2026 stablefield-cov contributors
#pragma once

#include "stablefield/field_model.hpp"

namespace stablefield {

/// @brief Budgets and accuracy target for the exact summation routines.
///
/// rel_tol is relative to the running magnitude of the result; the returned
/// error_bound is always absolute and always honest: when a budget runs out
/// before the target is met, tolerance_met is false and error_bound reports
/// what was actually certified.
struct CovOptions {
  double rel_tol = 1e-6;
  long long max_rows = 300000;           // explicit row prefix budget
  long long max_terms_per_row = 4000000; // inner-series budget
  long long max_box_terms = 50000000;    // expanding-box budget (alpha < 1)
};

/// @brief Value with certified error bound for a lattice covariance sum.
struct CovResult {
  double value = 0.0;
  double error_bound = 0.0;
  long long rows_used = 0;
  bool tolerance_met = false;
};

/// @brief Spectral covariance of (X_0, X_k) for the field described by spec:
/// the sum of v_kernel over all coefficient pairs sharing an innovation.
CovResult rho(const FieldSpec& spec, long long k1, long long k2,
              const CovOptions& opt = {});

/// @brief Second-moment functionals of the pair's spectral measure.
struct SpectralMasses {
  double rho_value = 0.0;
  double rho_error = 0.0;
  double mass_s1_sq = 0.0;  // integral of s1^2 against the spectral measure
  double mass_s2_sq = 0.0;  // integral of s2^2
  double total_mass = 0.0;  // full mass of the spectral measure
  double scc = 0.0;         // rho / sqrt(mass_s1_sq * mass_s2_sq)
  double mass_error = 0.0;
  bool tolerance_met = false;
};

SpectralMasses spectral_masses(const FieldSpec& spec, long long k1,
                               long long k2, const CovOptions& opt = {});

/// @brief Total alpha-power mass of the coefficient field, sum |c|^alpha.
double alpha_mass(const FieldSpec& spec, double rel_tol = 1e-10);

/// @brief Shifted alpha-power mass: sum_{i,j>=0} |c(i+s1, j+s2)|^alpha.
/// The difference alpha_mass(spec) - alpha_mass_shifted(spec, s1, s2) is the
/// mass of the rows/columns a lag shift pushes out of the shared lattice.
double alpha_mass_shifted(const FieldSpec& spec, long long s1, long long s2);

/// @brief Characteristic-function exponent of th1*X_0 + th2*X_k, i.e. the
/// integral of |th . s|^alpha against the pair's spectral measure.
struct ChfExponent {
  double value = 0.0;
  double error_bound = 0.0;
  bool tolerance_met = false;
};
ChfExponent chf_exponent(const FieldSpec& spec, long long k1, long long k2,
                         double th1, double th2, double rel_tol = 1e-6);

}  // namespace stablefield
