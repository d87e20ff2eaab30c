// SPDX-License-Identifier: MIT
// Copyright (c) 2026 stablefield-cov contributors
//
// Monte-Carlo side of the library: exact-in-distribution sampling of the
// joint pair (X_0, X_k) of a stable moving-average field, an empirical
// characteristic-function check against the exact exponent, and a
// tail-based estimator of the spectral covariance.
#pragma once

#include <array>
#include <cstdint>
#include <cstddef>
#include <string>
#include <vector>

#include "stablefield/field_model.hpp"

namespace stablefield {

// Standard symmetric alpha-stable variate (characteristic function
// exp(-|t|^alpha)) from a uniform angle u in (-pi/2, pi/2) and a unit
// exponential w; at alpha = 2 this is the centred Gaussian with
// characteristic function exp(-t^2).
double standard_stable(double alpha, double u, double w);

// count i.i.d. draws of scale * standard_stable, reproducible from the seed.
std::vector<double> sample_sas(double alpha, double scale, std::uint64_t seed,
                               std::size_t count);

// Inverse standard normal CDF.
double normal_quantile(double p);

// Deterministic keyed counter RNG: every (seed, sample, atom) triple maps to
// an independent (angle, exponential) pair, so batches are reproducible and
// independent of traversal order.
struct KeyedRng {
  std::uint64_t key = 0;

  static KeyedRng for_sample(std::uint64_t seed, std::uint64_t sample);
  // Returns u in (-pi/2, pi/2) and w > 0 for the atom counter t.
  void draw(std::uint64_t t, double& u, double& w) const;
};

struct SimOptions {
  int box = 48;                // shared-innovation box is [0,box) x [0,box)
  bool collapse_tails = true;  // fold edge/strip/corner masses into single
                               // stable draws (marginal laws stay exact);
                               // false = plain truncation to the box
  double sim_tol = 1e-6;       // plain truncation only: maximum alpha-mass
                               // that may be discarded
  std::uint64_t seed = 0x517ab1e5u;
};

// Joint draws of (X_0, X_k) sharing one innovation panel per sample.
struct PairSample {
  std::vector<double> x0, xk;
  // Alpha-mass whose direction on the unit circle is only known to first
  // order (strip/corner collapse); zero when every collapsed block has a
  // single exact direction.
  double direction_bias_mass = 0.0;
  // Alpha-mass dropped entirely (plain truncation mode only).
  double truncated_mass = 0.0;
};

// Throws TruncationTooCoarseError in plain-truncation mode when the dropped
// alpha-mass exceeds opt.sim_tol.
PairSample simulate_pairs(const FieldSpec& spec, long long k1, long long k2,
                          std::size_t n, const SimOptions& opt = {});

// Empirical characteristic function versus the exact exponent, with a
// simultaneous (Bonferroni) normal confidence band per grid point.
struct EcfRow {
  double theta1 = 0.0, theta2 = 0.0;
  char part = 'R';  // 'R' = real part, 'I' = imaginary part
  double measured = 0.0;
  double expected = 0.0;
  double band = 0.0;  // z * sd/sqrt(N) + exactness/truncation allowance
  bool pass = false;
};

struct EcfReport {
  std::vector<EcfRow> rows;
  double z = 0.0;
  std::size_t samples = 0;
  bool all_pass = false;
  std::string summary() const;
};

// Frequency grid used when none is supplied: magnitudes {0.4, 0.8, 1.4}
// along the axes and both diagonals.
std::vector<std::array<double, 2>> default_theta_grid();

EcfReport ecf_check(const PairSample& sample, const FieldSpec& spec,
                    long long k1, long long k2,
                    const std::vector<std::array<double, 2>>& theta_grid,
                    double confidence = 0.99);

// Convenience: simulate n pairs, then run the default-grid check.
EcfReport ecf_check(const FieldSpec& spec, long long k1, long long k2,
                    std::size_t n, double confidence = 0.99,
                    const SimOptions& opt = {});

// Estimate the spectral covariance from the angular mean over tail
// exceedances:
//   rho_hat = total_mass * mean(s1 s2 over ||(x0,xk)|| > u),
// where u is the empirical radius quantile and total_mass is the exact
// spectral mass from spectral_masses.  Requires threshold_quantile in
// (0.9, 1) and at least 500 exceedances.
struct TailRhoEstimate {
  double value = 0.0;
  double threshold = 0.0;        // u, the radius quantile
  std::size_t exceedances = 0;
  double total_mass = 0.0;       // exact spectral mass used to scale
  double angular_mean = 0.0;     // mean of s1 s2 over exceedances
};

TailRhoEstimate tail_rho_estimate(const PairSample& sample,
                                  const FieldSpec& spec, long long k1,
                                  long long k2, double threshold_quantile);

}  // namespace stablefield
