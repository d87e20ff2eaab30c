// SPDX-License-Identifier: MIT
// Copyright (c) 2026 stablefield-cov contributors
#include "stablefield/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>
#include <utility>

#include "stablefield/errors.hpp"

namespace stablefield {

namespace {

constexpr double kSnapTol = 1e-12;

bool near(double x, double y) {
  return std::fabs(x - y) <=
         kSnapTol * std::max({1.0, std::fabs(x), std::fabs(y)});
}

std::string fmt_num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return buf;
}

}  // namespace

// ===================== RateFunction =====================

double RateFunction::eval(double n, double m) const {
  double out = std::pow(n, n_exp) * std::pow(m, m_exp);
  for (const LogFactor& lf : logs) {
    const double arg = lf.u * std::log(n) + lf.v * std::log(m);
    if (!(arg > 0.0)) {
      throw LogDomainError("rate log factor ln(n^" + fmt_num(lf.u) + " m^" +
                           fmt_num(lf.v) + ") is not positive at n=" +
                           fmt_num(n) + ", m=" + fmt_num(m));
    }
    out *= arg;
  }
  return out;
}

std::string RateFunction::describe() const {
  std::ostringstream os;
  os << "n^{" << fmt_num(n_exp) << "} m^{" << fmt_num(m_exp) << "}";
  for (const LogFactor& lf : logs) {
    if (lf.u == 1.0 && lf.v == 0.0) {
      os << " log(n)";
    } else if (lf.u == 0.0 && lf.v == 1.0) {
      os << " log(m)";
    } else {
      os << " log(n^{" << fmt_num(lf.u) << "} m^{" << fmt_num(lf.v) << "})";
    }
  }
  return os.str();
}

// ===================== constant descriptions =====================

namespace {

std::string axis_name(Axis a) { return a == Axis::Row ? "row" : "col"; }

std::string series_text(const PowerSeriesSpec& s) {
  std::ostringstream os;
  os << "sum_" << (s.axis == Axis::Row ? "i" : "j") << " "
     << axis_name(s.axis) << "-limit-weight^{" << fmt_num(s.weight_power)
     << "} (1+" << (s.axis == Axis::Row ? "i" : "j") << ")^{-"
     << fmt_num(s.exponent) << "}";
  return os.str();
}

std::string beta_text(const BetaIntegralSpec& b) {
  std::ostringstream os;
  os << "int_0^inf u^{-" << fmt_num(b.p) << "} (1+u)^{-" << fmt_num(b.q)
     << "} du";
  return os.str();
}

}  // namespace

std::string describe(const ConstantDescriptor& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        std::ostringstream os;
        if constexpr (std::is_same_v<T, SignedPowerSeriesC>) {
          os << "double series of signed weight powers "
                "sum_{i,j} sgn(w)|w|^{alpha-1} "
                "(1+i)^{-beta1(alpha-1)} (1+j)^{-beta2(alpha-1)}";
        } else if constexpr (std::is_same_v<T, VIntegral2DC>) {
          os << "double kernel integral over unit-offset power atoms ("
             << (v.quadrant == LagQuadrant::PosPos ? "same-sign"
                                                   : "mixed-sign")
             << " offsets)";
        } else if constexpr (std::is_same_v<T, SeriesTimesBetaC>) {
          os << "[" << series_text(v.series) << "] * [" << beta_text(v.beta)
             << "]";
        } else if constexpr (std::is_same_v<T, BetaIntegralOnlyC>) {
          os << beta_text(v.beta);
        } else if constexpr (std::is_same_v<T, WeightPowerSeriesC>) {
          os << series_text(v.series);
        } else if constexpr (std::is_same_v<T, UnitConstantC>) {
          os << "1";
        } else if constexpr (std::is_same_v<T, ProductSeriesC>) {
          os << "[" << series_text(v.row) << "] * [" << series_text(v.col)
             << "]";
        } else if constexpr (std::is_same_v<T, CMixedSeriesC>) {
          os << fmt_num(v.prefactor) << " * sum_{i,j} V("
             << fmt_num(v.col_scale) << " * colatom_j, "
             << fmt_num(v.row_scale) << " * rowatom_i)"
             << (v.printed_form ? " [published scale]" : "");
        } else if constexpr (std::is_same_v<T, SeriesVIntegralMixC>) {
          os << "C_V(" << fmt_num(v.integral_beta) << ") * sum over "
             << axis_name(v.series_axis) << " atoms^{alpha - 1/"
             << fmt_num(v.integral_beta) << "}";
        }
        return os.str();
      },
      c);
}

std::string Regime::label() const {
  std::ostringstream os;
  os << (quadrant == LagQuadrant::PosPos ? "(+,+)" : "(+,-)") << " case "
     << case_id;
  if (subcase) os << subcase;
  if (mirrored) os << " (mirrored)";
  return os.str();
}

// ===================== zones & transposition =====================

namespace {

enum class Zone { Low, One, Mid, Boundary, High };

// Requires alpha > 1.  b = 1/(alpha-1) is the resonance threshold; exact
// hits (within snapping tolerance) land on Boundary / One.
Zone zone_of(double alpha, double beta) {
  const double b = 1.0 / (alpha - 1.0);
  if (near(beta, b)) return Zone::Boundary;
  if (near(beta, 1.0)) return Zone::One;
  if (beta > b) return Zone::High;
  if (beta > 1.0) return Zone::Mid;
  return Zone::Low;
}

Direction invert(const Direction& d) {
  switch (d.kind) {
    case DirectionKind::ToZero:
      return Direction::to_infinity();
    case DirectionKind::ToInfinity:
      return Direction::to_zero();
    case DirectionKind::ToConst:
      return Direction::to_const(1.0 / d.c);
  }
  return d;
}

std::optional<Direction> invert(const std::optional<Direction>& d) {
  if (!d) return std::nullopt;
  return invert(*d);
}

// The slow-decay rows branch on how m^{-beta2}/n^{-beta1} behaves; reaching
// one of them without a declared direction is a caller error.
const Direction& need_direction(const std::optional<Direction>& d,
                                int case_id) {
  if (!d) {
    throw DirectionRequiredError(
        "mixed-sign case " + std::to_string(case_id) +
        " branches on the lag direction; supply to_zero(), to_const(c), or "
        "to_infinity()");
  }
  return *d;
}

Axis flip(Axis a) { return a == Axis::Row ? Axis::Col : Axis::Row; }

ConstantDescriptor transpose(const ConstantDescriptor& c) {
  return std::visit(
      [](auto v) -> ConstantDescriptor {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, SeriesTimesBetaC>) {
          v.series.axis = flip(v.series.axis);
        } else if constexpr (std::is_same_v<T, WeightPowerSeriesC>) {
          v.series.axis = flip(v.series.axis);
        } else if constexpr (std::is_same_v<T, ProductSeriesC>) {
          std::swap(v.row, v.col);
          v.row.axis = Axis::Row;
          v.col.axis = Axis::Col;
        } else if constexpr (std::is_same_v<T, CMixedSeriesC>) {
          std::swap(v.col_scale, v.row_scale);
        } else if constexpr (std::is_same_v<T, SeriesVIntegralMixC>) {
          v.series_axis = flip(v.series_axis);
        }
        return v;
      },
      c);
}

// Rewrites a regime classified with swapped axes back into the original
// coordinates: exponents, log factors, and axis-tagged constants all swap.
Regime transpose(Regime r, const Direction& original_dir) {
  std::swap(r.beta1, r.beta2);
  std::swap(r.rate.n_exp, r.rate.m_exp);
  for (LogFactor& lf : r.rate.logs) std::swap(lf.u, lf.v);
  r.constant = transpose(r.constant);
  r.direction = original_dir;
  r.mirrored = true;
  return r;
}

Regime make_regime(LagQuadrant q, int id, char sub, double a, double b1,
                   double b2, Direction d, RateFunction rate,
                   ConstantDescriptor cons) {
  Regime r;
  r.quadrant = q;
  r.case_id = id;
  r.subcase = sub;
  r.alpha = a;
  r.beta1 = b1;
  r.beta2 = b2;
  r.direction = d;
  r.rate = std::move(rate);
  r.constant = std::move(cons);
  return r;
}

// ===================== same-sign quadrant =====================

// Direct table rows; std::nullopt means "use the axis-swapped row".
std::optional<Classification> pospos_direct(double a, double b1, double b2) {
  const LagQuadrant Q = LagQuadrant::PosPos;
  const Direction d{};
  if (a <= 1.0) {
    return make_regime(Q, 2, 0, a, b1, b2, d,
                       {1.0 - a * b1, 1.0 - a * b2, {}},
                       VIntegral2DC{LagQuadrant::PosPos});
  }
  const Zone z1 = zone_of(a, b1);
  const Zone z2 = zone_of(a, b2);
  const bool mid1 = z1 != Zone::Boundary && z1 != Zone::High;
  const bool mid2 = z2 != Zone::Boundary && z2 != Zone::High;
  const double am1 = a - 1.0;
  if (z1 == Zone::High && z2 == Zone::High) {
    return make_regime(Q, 1, 0, a, b1, b2, d, {-b1, -b2, {}},
                       SignedPowerSeriesC{});
  }
  if (mid1 && mid2) {
    return make_regime(Q, 2, 0, a, b1, b2, d,
                       {1.0 - a * b1, 1.0 - a * b2, {}},
                       VIntegral2DC{LagQuadrant::PosPos});
  }
  if (z1 == Zone::High && mid2) {
    return make_regime(
        Q, 3, 0, a, b1, b2, d, {-b1, 1.0 - a * b2, {}},
        SeriesTimesBetaC{{Axis::Row, am1, b1 * am1}, {b2 * am1, b2}});
  }
  if (z1 == Zone::Boundary && mid2) {
    return make_regime(Q, 4, 0, a, b1, b2, d,
                       {-b1, 1.0 - a * b2, {{1.0, 0.0}}},
                       BetaIntegralOnlyC{{b2 * am1, b2}});
  }
  if (z1 == Zone::Boundary && z2 == Zone::High) {
    return make_regime(Q, 5, 0, a, b1, b2, d, {-b1, -b2, {{1.0, 0.0}}},
                       WeightPowerSeriesC{{Axis::Col, am1, b2 * am1}});
  }
  if (z1 == Zone::Boundary && z2 == Zone::Boundary) {
    return make_regime(Q, 6, 0, a, b1, b2, d,
                       {-b1, -b2, {{1.0, 0.0}, {0.0, 1.0}}}, UnitConstantC{});
  }
  return std::nullopt;  // (mid, High), (mid, Boundary), (High, Boundary)
}

Classification classify_pospos(double a, double b1, double b2) {
  if (auto direct = pospos_direct(a, b1, b2)) return *direct;
  auto swapped = pospos_direct(a, b2, b1);
  // The same-sign table plus its mirror covers every admissible point.
  Regime r = std::get<Regime>(*swapped);
  return transpose(std::move(r), Direction{});
}

// ===================== mixed-sign quadrant =====================

// Shared constant forms.
ConstantDescriptor cmixed_const_limit(double c) {
  // prefactor (1/c) with the row atom scaled by c.
  return CMixedSeriesC{1.0 / c, 1.0, c, false};
}

ConstantDescriptor cmixed_scaled_col(double c) {
  // prefactor c with the col atom scaled by 1/c.
  return CMixedSeriesC{c, 1.0 / c, 1.0, false};
}

std::optional<Classification> posneg_direct(
    double a, double b1, double b2, const std::optional<Direction>& dir) {
  const LagQuadrant Q = LagQuadrant::PosNeg;
  const double am1 = a - 1.0;
  const Direction free_dir = dir.value_or(Direction{});

  const bool low_band_1 = a <= 1.0 || (zone_of(a, b1) != Zone::Boundary &&
                                       zone_of(a, b1) != Zone::High);
  const bool low_band_2 = a <= 1.0 || (zone_of(a, b2) != Zone::Boundary &&
                                       zone_of(a, b2) != Zone::High);
  if (low_band_1 && low_band_2) {
    const double s = 1.0 / b1 + 1.0 / b2;
    if (near(s, a)) {
      return Uncovered{"critical direction-sum 1/beta1 + 1/beta2 = alpha (= " +
                       fmt_num(a) + "); no decay rate is available here"};
    }
    if (s > a) {
      return make_regime(Q, 1, 0, a, b1, b2, free_dir,
                         {1.0 - a * b1, 1.0 - a * b2, {}},
                         VIntegral2DC{LagQuadrant::PosNeg});
    }
    // Slow-direction regime: the rate depends on the approach direction.
    const Direction& d = need_direction(dir, 6);
    switch (d.kind) {
      case DirectionKind::ToZero:
        return make_regime(Q, 6, 'a', a, b1, b2, d,
                           {-b1 / b2, 1.0 - a * b2, {}},
                           SeriesVIntegralMixC{Axis::Row, b2});
      case DirectionKind::ToConst:
        // Published recipe; see the evaluator for the consistency check
        // against the neighbouring regimes.
        return make_regime(Q, 6, 'b', a, b1, b2, d,
                           {-b1 * am1, -b2, {}},
                           CMixedSeriesC{1.0 / d.c, 1.0, d.c * d.c, true});
      case DirectionKind::ToInfinity:
        return make_regime(Q, 6, 'c', a, b1, b2, d,
                           {1.0 - a * b1, -b2 / b1, {}},
                           SeriesVIntegralMixC{Axis::Col, b1});
    }
  }
  if (a <= 1.0) return std::nullopt;  // unreachable: the band covers a <= 1

  const Zone z1 = zone_of(a, b1);
  const Zone z2 = zone_of(a, b2);

  if (z1 == Zone::High && z2 == Zone::Low) {
    return make_regime(
        Q, 2, 0, a, b1, b2, free_dir, {-b1, 1.0 - a * b2, {}},
        SeriesTimesBetaC{{Axis::Row, am1, b1 * am1}, {b2, b2 * am1}});
  }
  if (z1 == Zone::Boundary && z2 == Zone::Low) {
    return make_regime(Q, 3, 0, a, b1, b2, free_dir,
                       {1.0 - a * b1, 1.0 - a * b2, {{1.0, 0.0}}},
                       BetaIntegralOnlyC{{b2, b2 * am1}});
  }
  if ((z1 == Zone::High || z1 == Zone::Boundary) && z2 == Zone::One) {
    return Uncovered{
        "beta2 = 1 resonates against a summable first axis; the decay "
        "table has no entry for this line"};
  }
  if (z1 == Zone::High && z2 == Zone::High) {
    const Direction& d = need_direction(dir, 4);
    switch (d.kind) {
      case DirectionKind::ToZero:
        return make_regime(Q, 4, 'a', a, b1, b2, d, {-b1 * am1, -b2, {}},
                           ProductSeriesC{{Axis::Row, 1.0, b1},
                                          {Axis::Col, am1, b2 * am1}});
      case DirectionKind::ToConst:
        return make_regime(Q, 4, 'b', a, b1, b2, d, {-b1 * am1, -b2, {}},
                           cmixed_const_limit(d.c));
      case DirectionKind::ToInfinity:
        return make_regime(Q, 4, 'c', a, b1, b2, d, {-b1, -b2 * am1, {}},
                           ProductSeriesC{{Axis::Row, am1, b1 * am1},
                                          {Axis::Col, 1.0, b2}});
    }
  }
  // The remaining rows only exist strictly inside the stable range.
  const bool strict = a < 2.0 && !near(a, 2.0);
  if (z1 == Zone::High && z2 == Zone::Mid) {
    const Direction& d = need_direction(dir, 5);
    switch (d.kind) {
      case DirectionKind::ToZero:
        return make_regime(Q, 5, 'a', a, b1, b2, d,
                           {-b1 / b2, 1.0 - a * b2, {}},
                           SeriesVIntegralMixC{Axis::Row, b2});
      case DirectionKind::ToConst:
        return make_regime(Q, 5, 'b', a, b1, b2, d, {-b1, -b2 * am1, {}},
                           cmixed_scaled_col(d.c));
      case DirectionKind::ToInfinity:
        return make_regime(Q, 5, 'c', a, b1, b2, d, {-b1, -b2 * am1, {}},
                           ProductSeriesC{{Axis::Row, am1, b1 * am1},
                                          {Axis::Col, 1.0, b2}});
    }
  }
  if (z1 == Zone::High && z2 == Zone::Boundary) {
    if (!strict) {
      return Uncovered{
          "beta2 = 1/(alpha-1) at alpha = 2 is a resonance the decay table "
          "does not cover"};
    }
    const Direction& d = need_direction(dir, 7);
    switch (d.kind) {
      case DirectionKind::ToZero:
        return make_regime(Q, 7, 'a', a, b1, b2, d,
                           {-b1 / b2, 1.0 - a * b2, {{-b1 / b2, 1.0}}},
                           WeightPowerSeriesC{{Axis::Row, 1.0, b1}});
      case DirectionKind::ToConst:
        return make_regime(Q, 7, 'b', a, b1, b2, d, {-b1, -b2 * am1, {}},
                           cmixed_scaled_col(d.c));
      case DirectionKind::ToInfinity:
        return make_regime(Q, 7, 'c', a, b1, b2, d, {-b1, -b2 * am1, {}},
                           ProductSeriesC{{Axis::Row, am1, b1 * am1},
                                          {Axis::Col, 1.0, b2}});
    }
  }
  if (z1 == Zone::Boundary && z2 == Zone::Mid) {
    const Direction& d = need_direction(dir, 8);
    switch (d.kind) {
      case DirectionKind::ToZero:
        return make_regime(Q, 8, 'a', a, b1, b2, d,
                           {-b1 / b2, 1.0 - a * b2, {}},
                           SeriesVIntegralMixC{Axis::Row, b2});
      case DirectionKind::ToConst:
        return make_regime(Q, 8, 'b', a, b1, b2, d, {-b1, -b2 * am1, {}},
                           cmixed_scaled_col(d.c));
      case DirectionKind::ToInfinity:
        return make_regime(Q, 8, 'c', a, b1, b2, d,
                           {1.0 - a * b1, -b2 / b1, {{1.0, -b2 / b1}}},
                           WeightPowerSeriesC{{Axis::Col, 1.0, b2}});
    }
  }
  if (z1 == Zone::Boundary && z2 == Zone::Boundary) {
    if (!strict) {
      return Uncovered{
          "beta1 = beta2 = 1 at alpha = 2 sits on the critical "
          "direction-sum line; no decay rate is available"};
    }
    const Direction& d = need_direction(dir, 9);
    switch (d.kind) {
      case DirectionKind::ToZero:
        return make_regime(Q, 9, 'a', a, b1, b2, d,
                           {-b1 / b2, 1.0 - a * b2, {{-b1 / b2, 1.0}}},
                           WeightPowerSeriesC{{Axis::Row, 1.0, b1}});
      case DirectionKind::ToConst:
        return make_regime(Q, 9, 'b', a, b1, b2, d, {-b1, -b2 * am1, {}},
                           cmixed_scaled_col(d.c));
      case DirectionKind::ToInfinity:
        return make_regime(Q, 9, 'c', a, b1, b2, d,
                           {1.0 - a * b1, -b2 / b1, {{1.0, -b2 / b1}}},
                           WeightPowerSeriesC{{Axis::Col, 1.0, b2}});
    }
  }
  return std::nullopt;  // resolved through the axis-swapped table row
}

Classification classify_posneg(double a, double b1, double b2,
                               const std::optional<Direction>& d) {
  if (auto direct = posneg_direct(a, b1, b2, d)) return *direct;
  auto swapped = posneg_direct(a, b2, b1, invert(d));
  if (!swapped) {
    // Cannot happen for admissible input: every zone pair is matched by the
    // direct table or its transpose.  Guard against logic drift anyway.
    return Uncovered{"internal: no table row matched this parameter point"};
  }
  if (std::holds_alternative<Uncovered>(*swapped)) return *swapped;
  return transpose(std::get<Regime>(std::move(*swapped)),
                   d.value_or(Direction{}));
}

void finalize(Regime& r) {
  std::ostringstream os;
  os << r.label() << ": rho(n,"
     << (r.quadrant == LagQuadrant::PosNeg ? "-m" : "m") << ") ~ C * "
     << r.rate.describe() << " with C = " << describe(r.constant);
  r.summary = os.str();
}

}  // namespace

// ===================== public entry points =====================

Classification classify(double alpha, double beta1, double beta2,
                        LagQuadrant quadrant, std::optional<Direction> dir) {
  if (!(alpha > 0.0) || alpha > 2.0) {
    throw InvalidParameterError("alpha must lie in (0, 2]");
  }
  for (double beta : {beta1, beta2}) {
    if (!(beta > 1.0 / alpha) || near(beta, 1.0 / alpha)) {
      throw InvalidParameterError(
          "each beta must exceed 1/alpha for a summable field");
    }
  }
  if (quadrant == LagQuadrant::PosNeg && dir &&
      dir->kind == DirectionKind::ToConst) {
    if (!(dir->c > 0.0) || !std::isfinite(dir->c)) {
      throw InvalidParameterError(
          "a constant-direction limit requires a finite c > 0");
    }
  }
  Classification out = quadrant == LagQuadrant::PosPos
                           ? classify_pospos(alpha, beta1, beta2)
                           : classify_posneg(alpha, beta1, beta2, dir);
  if (Regime* r = std::get_if<Regime>(&out)) finalize(*r);
  return out;
}

Classification classify(const FieldSpec& spec, LagQuadrant quadrant,
                        std::optional<Direction> dir) {
  validate(spec);
  if (spec.has_override()) {
    throw InvalidParameterError(
        "finite-support override filters have exact covariances and no "
        "power-law decay regime");
  }
  return classify(spec.alpha, spec.beta1, spec.beta2, quadrant, dir);
}

}  // namespace stablefield
