// SPDX-License-Identifier: MIT
// Copyright (c) 2026 stablefield-cov contributors
//
// Maps an admissible parameter point (alpha, beta1, beta2), a lag quadrant,
// and (for the mixed-sign quadrant) a direction of approach to the regime
// that governs the covariance decay: a closed-form rate function plus a
// recipe for the limiting constant.  Points that sit on a resonance the
// decay table does not cover are reported as Uncovered with a reason.
#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "stablefield/field_model.hpp"

namespace stablefield {

// Sign pattern of the lag (k1, k2) after symmetry reduction: both positive,
// or first positive / second negative.  Lags with a zero component reduce to
// one-dimensional behaviour and take the PosPos table.
enum class LagQuadrant { PosPos, PosNeg };

// For mixed-sign lags the decay depends on how m^{-beta2} compares with
// n^{-beta1} along the lag sequence (n, -m).
enum class DirectionKind { ToZero, ToConst, ToInfinity };

struct Direction {
  DirectionKind kind = DirectionKind::ToConst;
  double c = 1.0;  // limit of m^{-beta2} / n^{-beta1} when kind == ToConst

  static Direction to_zero() { return {DirectionKind::ToZero, 0.0}; }
  static Direction to_const(double c) { return {DirectionKind::ToConst, c}; }
  static Direction to_infinity() { return {DirectionKind::ToInfinity, 0.0}; }
};

// One multiplicative log factor: ln(n^u m^v).
struct LogFactor {
  double u = 0.0, v = 0.0;
};

// rate(n, m) = n^{n_exp} m^{m_exp} * prod_k ln(n^{u_k} m^{v_k}).
struct RateFunction {
  double n_exp = 0.0;
  double m_exp = 0.0;
  std::vector<LogFactor> logs;

  // Throws LogDomainError when a log factor is not positive (argument <= 1).
  double eval(double n, double m) const;
  std::string describe() const;
};

// ---------------------------------------------------------------------------
// Limiting-constant recipes.  Each alternative names a quantity the constant
// evaluator knows how to compute from the weight family; all exponents and
// scales are stored numerically so a recipe is self-contained.
// ---------------------------------------------------------------------------

enum class Axis { Row, Col };

// Row: sum_i w_rowlim(i)^{weight_power} (1+i)^{-exponent}; Col likewise over
// column-limit weights.
struct PowerSeriesSpec {
  Axis axis = Axis::Row;
  double weight_power = 1.0;
  double exponent = 2.0;
};

// int_0^inf u^{-p} (1+u)^{-q} du.
struct BetaIntegralSpec {
  double p = 0.0, q = 0.0;
};

// Double series of signed weight powers:
//   sum_{i,j} sgn(w_ij)|w_ij|^{alpha-1} (1+i)^{-beta1(alpha-1)} (1+j)^{-...}.
struct SignedPowerSeriesC {};

// Double integral of the covariance kernel over unit-offset power atoms; the
// quadrant picks which argument carries the offsets.
struct VIntegral2DC {
  LagQuadrant quadrant = LagQuadrant::PosPos;
};

// (power series) * (beta integral).
struct SeriesTimesBetaC {
  PowerSeriesSpec series;
  BetaIntegralSpec beta;
};

struct BetaIntegralOnlyC {
  BetaIntegralSpec beta;
};

struct WeightPowerSeriesC {
  PowerSeriesSpec series;
};

struct UnitConstantC {};

// (row power series) * (col power series).
struct ProductSeriesC {
  PowerSeriesSpec row;
  PowerSeriesSpec col;
};

// prefactor * sum_{i,j} V(col_scale * A_j, row_scale * B_i) with
// A_j = w_collim(j) (1+j)^{-beta2}, B_i = w_rowlim(i) (1+i)^{-beta1}.
// `printed_form` marks the one published recipe whose scale factor is
// inconsistent with the neighbouring regimes; the evaluator can also produce
// the internally consistent variant for comparison.
struct CMixedSeriesC {
  double prefactor = 1.0;
  double col_scale = 1.0;
  double row_scale = 1.0;
  bool printed_form = false;
};

// C_V(beta) * sum over one axis of atom^{alpha - 1/beta}, where
// C_V(beta) = int_0^inf V(w^{-beta}, 1) dw collapses the other axis.
struct SeriesVIntegralMixC {
  Axis series_axis = Axis::Row;
  double integral_beta = 2.0;
};

using ConstantDescriptor =
    std::variant<SignedPowerSeriesC, VIntegral2DC, SeriesTimesBetaC,
                 BetaIntegralOnlyC, WeightPowerSeriesC, UnitConstantC,
                 ProductSeriesC, CMixedSeriesC, SeriesVIntegralMixC>;

std::string describe(const ConstantDescriptor& c);

// ---------------------------------------------------------------------------

struct Regime {
  LagQuadrant quadrant = LagQuadrant::PosPos;
  int case_id = 0;      // table row within the quadrant
  char subcase = 0;     // 'a'/'b'/'c' when the direction picks a branch
  bool mirrored = false;  // true when the axis-swapped table row applies
  double alpha = 0.0, beta1 = 0.0, beta2 = 0.0;
  Direction direction;  // meaningful in the PosNeg quadrant only
  RateFunction rate;
  ConstantDescriptor constant;
  std::string summary;

  std::string label() const;  // e.g. "PosNeg case 5b (mirrored)"
};

struct Uncovered {
  std::string reason;
};

using Classification = std::variant<Regime, Uncovered>;

// Classify a parameter point.  Throws InvalidParameterError when the point
// is inadmissible (alpha outside (0,2], beta_k <= 1/alpha, bad direction),
// and DirectionRequiredError when the matched mixed-sign case branches on
// the approach direction but none was supplied.
Classification classify(double alpha, double beta1, double beta2,
                        LagQuadrant quadrant,
                        std::optional<Direction> dir = std::nullopt);

// Convenience overload; rejects finite-support overrides, whose covariances
// are exact and carry no power-law regime.
Classification classify(const FieldSpec& spec, LagQuadrant quadrant,
                        std::optional<Direction> dir = std::nullopt);

}  // namespace stablefield
