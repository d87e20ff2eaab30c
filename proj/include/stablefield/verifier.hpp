// SPDX-License-Identifier: MIT
// Copyright (c) 2026 stablefield-cov contributors
//
// Empirical convergence checks: drive the exact covariance along a lag
// schedule matched to a classified regime, compare rho / rate(n,m) against
// the predicted limiting constant, and report whether the relative gap is
// shrinking.  Also hosts the adjudicator that compares the published
// constant-direction scale factor against the internally consistent one.
#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stablefield/classifier.hpp"
#include "stablefield/constants.hpp"
#include "stablefield/exact_cov.hpp"
#include "stablefield/field_model.hpp"

namespace stablefield {

// Same-sign lag schedules: how the second lag grows with the first.
enum class DiagonalKind { Equal, SquareM, SqrtM };

struct Schedule {
  long long n_min = 16;
  long long n_max = 1024;
  int growth = 2;  // multiply n by this factor each step
  DiagonalKind diag = DiagonalKind::Equal;
};

struct VerifyOptions {
  Schedule schedule;
  // Acceptable final relative gap; when unset, 0.10 for regimes with log
  // factors and 0.05 otherwise.
  std::optional<double> gap_target;
  double rho_rel_tol = 1e-4;    // tolerance passed to the covariance engine
  double const_rel_tol = 1e-7;  // tolerance for the limiting constant
};

struct ReportRow {
  long long n = 0, m = 0;
  double rho = 0.0, rho_error = 0.0;
  double rate = 0.0, ratio = 0.0, predicted = 0.0, rel_gap = 0.0;
};

enum class Verdict { Converging, Inconclusive, Diverging };

std::string to_string(Verdict v);

struct ConvergenceReport {
  Regime regime;
  double constant = 0.0;
  double constant_error = 0.0;
  double gap_target = 0.0;
  std::vector<ReportRow> rows;
  std::vector<double> h_values;  // m^{-beta2} / n^{-beta1} per row
  // Mean of log2(rel_gap[i+1]/rel_gap[i]) over the last three steps:
  // negative = gap shrinking per doubling.
  double trend_slope = 0.0;
  Verdict verdict = Verdict::Inconclusive;
  std::string explanation;
};

// Injection point so tests can drive the verifier with a mock covariance.
using RhoFn =
    std::function<CovResult(const FieldSpec&, long long, long long)>;

// Lags matched to the regime: same-sign lags follow the schedule's diagonal;
// mixed-sign lags pick m so that m^{-beta2}/n^{-beta1} follows the regime's
// direction (constant c, slowly to zero, or slowly to infinity).
std::vector<std::pair<long long, long long>> lag_sequence(
    const Regime& regime, const Schedule& schedule);

ConvergenceReport run_convergence(const FieldSpec& spec, const Regime& regime,
                                  const VerifyOptions& opts = {},
                                  RhoFn rho_fn = {});

// Exact column layout: n,m,rho,rho_error,rate,ratio,predicted,rel_gap.
void write_csv(const ConvergenceReport& report, std::ostream& os);
void write_json(const ConvergenceReport& report, std::ostream& os);

// For a constant-direction regime whose recipe carries the published scale
// factor, compare measured ratios against both the published and the
// internally consistent constants.
struct AdjudicationReport {
  Regime regime;
  double printed_constant = 0.0;
  double consistent_constant = 0.0;
  std::vector<ReportRow> rows;  // rel_gap measured against printed_constant
  std::vector<double> gap_printed;
  std::vector<double> gap_consistent;
  std::string conclusion;
};

AdjudicationReport adjudicate_cmixed(const FieldSpec& spec,
                                     const Regime& regime,
                                     const VerifyOptions& opts = {},
                                     RhoFn rho_fn = {});

}  // namespace stablefield
