// SPDX-License-Identifier: MIT
// Copyright (c) 2026 stablefield-cov contributors
//
// Shared test oracles: slow, independent reference computations the library
// results are checked against.  Everything here favours obvious correctness
// over speed.
#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <utility>
#include <vector>

#include "stablefield/field_model.hpp"
#include "stablefield/vkernel.hpp"

namespace oracle {

inline double rel_err(double got, double want) {
  const double scale = std::fmax(std::fabs(want), 1e-300);
  return std::fabs(got - want) / scale;
}

/// Direct double sum of the spectral covariance over a finite box of lattice
/// coefficients.  Only a reference for quickly decaying filters where the
/// truncated tail is negligible at the tolerance used by the caller.
inline double brute_rho_box(const stablefield::FieldSpec& spec, long long k1,
                            long long k2, long long box) {
  const long long px = k1 < 0 ? -k1 : 0;
  const long long py = k2 < 0 ? -k2 : 0;
  const long long qx = k1 > 0 ? k1 : 0;
  const long long qy = k2 > 0 ? k2 : 0;
  double total = 0.0;
  for (long long i = 0; i < box; ++i) {
    for (long long j = 0; j < box; ++j) {
      const double a = stablefield::coefficient_lattice(spec, i + px, j + py);
      const double b = stablefield::coefficient_lattice(spec, i + qx, j + qy);
      total += stablefield::v_kernel(spec.alpha, a, b);
    }
  }
  return total;
}

/// Brute box sum with its leading truncation tail removed: the missing mass
/// beyond a box of side B scales like B^{1-min(alpha*beta1, alpha*beta2)}, so
/// one Richardson step between boxes B/2 and B cancels it.
inline double brute_rho_extrapolated(const stablefield::FieldSpec& spec,
                                     long long k1, long long k2,
                                     long long box) {
  const double full = brute_rho_box(spec, k1, k2, box);
  const double half = brute_rho_box(spec, k1, k2, box / 2);
  const double e =
      std::min(spec.alpha * spec.beta1, spec.alpha * spec.beta2) - 1.0;
  return full + (full - half) / (std::pow(2.0, e) - 1.0);
}

/// Exact spectral covariance of a finite (override) filter: each innovation
/// shared by the two fields pairs coefficient c_u with c_{u+k}.
inline double brute_rho_override(const std::vector<stablefield::Atom>& atoms,
                                 double alpha, long long k1, long long k2) {
  std::map<std::pair<long long, long long>, double> coef;
  for (const auto& at : atoms) coef[{at.i, at.j}] = at.value;
  double total = 0.0;
  for (const auto& [cell, a] : coef) {
    const auto it = coef.find({cell.first + k1, cell.second + k2});
    if (it != coef.end()) total += stablefield::v_kernel(alpha, a, it->second);
  }
  return total;
}

/// Gaussian-case oracle: at alpha = 2 the spectral covariance reduces to the
/// plain coefficient cross-product sum.
inline double gauss_cross_sum(const std::vector<stablefield::Atom>& atoms,
                              long long k1, long long k2) {
  std::map<std::pair<long long, long long>, double> coef;
  for (const auto& at : atoms) coef[{at.i, at.j}] = at.value;
  double total = 0.0;
  for (const auto& [cell, a] : coef) {
    const auto it = coef.find({cell.first + k1, cell.second + k2});
    if (it != coef.end()) total += a * it->second;
  }
  return total;
}

/// Deterministic RNG for test data; never seeded from the clock.
inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

}  // namespace oracle
