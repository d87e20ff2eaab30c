// SPDX-License-Identifier: MIT
// Copyright (c) 2026 stablefield-cov contributors
#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "stablefield/classifier.hpp"
#include "stablefield/errors.hpp"

using namespace stablefield;

namespace {

Regime regime(const Classification& c) {
  REQUIRE(std::holds_alternative<Regime>(c));
  return std::get<Regime>(c);
}

bool uncovered(const Classification& c) {
  return std::holds_alternative<Uncovered>(c);
}

}  // namespace

TEST_SUITE("classifier") {

TEST_CASE("rate function evaluation and description") {
  RateFunction r;
  r.n_exp = -2.0;
  r.m_exp = -3.0;
  r.logs = {{1.0, 0.0}};
  CHECK(r.eval(8.0, 2.0) ==
        doctest::Approx(std::pow(8.0, -2.0) * std::pow(2.0, -3.0) *
                        std::log(8.0)));
  CHECK(r.describe().find("log") != std::string::npos);
  CHECK_THROWS_AS(r.eval(1.0, 2.0), LogDomainError);  // log(1) = 0
  RateFunction plain;
  plain.n_exp = -1.5;
  plain.m_exp = -0.5;
  CHECK(plain.eval(4.0, 9.0) == doctest::Approx(std::pow(4.0, -1.5) / 3.0));
}

TEST_CASE("same-sign quadrant: the six table rows at alpha 1.5") {
  const double a = 1.5;  // b = 1/(alpha-1) = 2
  SUBCASE("fast decay on both axes") {
    const auto& r = regime(classify(a, 3.0, 3.5, LagQuadrant::PosPos));
    CHECK(r.case_id == 1);
    CHECK_FALSE(r.mirrored);
    CHECK(r.rate.n_exp == doctest::Approx(-3.0));
    CHECK(r.rate.m_exp == doctest::Approx(-3.5));
    CHECK(r.rate.logs.empty());
    CHECK(std::holds_alternative<SignedPowerSeriesC>(r.constant));
  }
  SUBCASE("slow decay on both axes") {
    const auto& r = regime(classify(a, 0.8, 1.5, LagQuadrant::PosPos));
    CHECK(r.case_id == 2);
    CHECK(r.rate.n_exp == doctest::Approx(1.0 - a * 0.8));
    CHECK(r.rate.m_exp == doctest::Approx(1.0 - a * 1.5));
    const auto* v = std::get_if<VIntegral2DC>(&r.constant);
    REQUIRE(v != nullptr);
    CHECK(v->quadrant == LagQuadrant::PosPos);
  }
  SUBCASE("fast rows, slow columns") {
    const auto& r = regime(classify(a, 3.0, 1.5, LagQuadrant::PosPos));
    CHECK(r.case_id == 3);
    CHECK_FALSE(r.mirrored);
    CHECK(r.rate.n_exp == doctest::Approx(-3.0));
    CHECK(r.rate.m_exp == doctest::Approx(1.0 - a * 1.5));
    const auto* st = std::get_if<SeriesTimesBetaC>(&r.constant);
    REQUIRE(st != nullptr);
    CHECK(st->series.axis == Axis::Row);
    CHECK(st->series.weight_power == doctest::Approx(a - 1.0));
    CHECK(st->series.exponent == doctest::Approx(3.0 * (a - 1.0)));
    CHECK(st->beta.p == doctest::Approx(1.5 * (a - 1.0)));
    CHECK(st->beta.q == doctest::Approx(1.5));
  }
  SUBCASE("boundary rows, slow columns") {
    const auto& r = regime(classify(a, 2.0, 1.5, LagQuadrant::PosPos));
    CHECK(r.case_id == 4);
    CHECK(r.rate.n_exp == doctest::Approx(-2.0));
    CHECK(r.rate.m_exp == doctest::Approx(1.0 - a * 1.5));
    REQUIRE(r.rate.logs.size() == 1);
    CHECK(r.rate.logs[0].u == doctest::Approx(1.0));
    CHECK(r.rate.logs[0].v == doctest::Approx(0.0));
    CHECK(std::holds_alternative<BetaIntegralOnlyC>(r.constant));
  }
  SUBCASE("boundary rows, fast columns") {
    const auto& r = regime(classify(a, 2.0, 3.0, LagQuadrant::PosPos));
    CHECK(r.case_id == 5);
    REQUIRE(r.rate.logs.size() == 1);
    const auto* wp = std::get_if<WeightPowerSeriesC>(&r.constant);
    REQUIRE(wp != nullptr);
    CHECK(wp->series.axis == Axis::Col);
    CHECK(wp->series.weight_power == doctest::Approx(a - 1.0));
    CHECK(wp->series.exponent == doctest::Approx(3.0 * (a - 1.0)));
  }
  SUBCASE("boundary on both axes") {
    const auto& r = regime(classify(a, 2.0, 2.0, LagQuadrant::PosPos));
    CHECK(r.case_id == 6);
    REQUIRE(r.rate.logs.size() == 2);
    CHECK(std::holds_alternative<UnitConstantC>(r.constant));
  }
}

TEST_CASE("same-sign mirrors swap the axes") {
  const double a = 1.5;
  const auto& direct = regime(classify(a, 3.0, 1.5, LagQuadrant::PosPos));
  const auto& mirror = regime(classify(a, 1.5, 3.0, LagQuadrant::PosPos));
  CHECK(mirror.case_id == direct.case_id);
  CHECK(mirror.mirrored);
  CHECK_FALSE(direct.mirrored);
  CHECK(mirror.rate.n_exp == doctest::Approx(direct.rate.m_exp));
  CHECK(mirror.rate.m_exp == doctest::Approx(direct.rate.n_exp));
  // The mirrored constant reads its series off the other axis.
  const auto* st = std::get_if<SeriesTimesBetaC>(&mirror.constant);
  REQUIRE(st != nullptr);
  CHECK(st->series.axis == Axis::Col);
}

TEST_CASE("boundary snapping tolerates rounding-level error only") {
  const double a = 1.5;
  const auto& snapped =
      regime(classify(a, 2.0 * (1.0 + 1e-13), 3.0, LagQuadrant::PosPos));
  CHECK(snapped.case_id == 5);  // treated as the boundary
  const auto& off =
      regime(classify(a, 2.0 + 1e-6, 3.0, LagQuadrant::PosPos));
  CHECK(off.case_id == 1);  // genuinely above the boundary
}

TEST_CASE("alpha at or below one always lands in the integral regime") {
  for (double a : {1.0, 0.7}) {
    for (double b1 : {1.6, 3.0, 10.0}) {
      const auto& r = regime(classify(a, b1, 2.5, LagQuadrant::PosPos));
      CHECK(r.case_id == 2);
      CHECK(std::holds_alternative<VIntegral2DC>(r.constant));
    }
  }
}

TEST_CASE("gaussian endpoint: boundary precedes the unit zone") {
  // At alpha = 2 the resonance exponent sits exactly at 1.
  const auto& r = regime(classify(2.0, 1.0, 1.0, LagQuadrant::PosPos));
  CHECK(r.case_id == 6);
  const auto& s = regime(classify(2.0, 0.75, 0.75, LagQuadrant::PosPos));
  CHECK(s.case_id == 2);
  const auto& t = regime(classify(2.0, 3.0, 3.0, LagQuadrant::PosPos));
  CHECK(t.case_id == 1);
}

TEST_CASE("inadmissible points are rejected outright") {
  CHECK_THROWS_AS(classify(0.0, 2.0, 2.0, LagQuadrant::PosPos),
                  InvalidParameterError);
  CHECK_THROWS_AS(classify(2.5, 2.0, 2.0, LagQuadrant::PosPos),
                  InvalidParameterError);
  CHECK_THROWS_AS(classify(1.5, 0.5, 2.0, LagQuadrant::PosPos),
                  InvalidParameterError);  // beta1 <= 1/alpha
  CHECK_THROWS_AS(
      classify(1.5, 2.0, 2.0, LagQuadrant::PosNeg,
               Direction::to_const(-1.0)),
      InvalidParameterError);  // nonpositive direction constant
}

TEST_CASE("mixed-sign quadrant: direction-free rows") {
  const double a = 1.5;
  SUBCASE("slow band, mass balance above the stability index") {
    // 1/1.2 + 1/1.2 = 5/3 > 1.5
    const auto& r = regime(classify(a, 1.2, 1.2, LagQuadrant::PosNeg));
    CHECK(r.case_id == 1);
    const auto* v = std::get_if<VIntegral2DC>(&r.constant);
    REQUIRE(v != nullptr);
    CHECK(v->quadrant == LagQuadrant::PosNeg);
    CHECK(r.rate.n_exp == doctest::Approx(1.0 - a * 1.2));
    CHECK(r.rate.m_exp == doctest::Approx(1.0 - a * 1.2));
  }
  SUBCASE("mass balance on the stability index is uncovered") {
    const double b = 2.0 / a;  // 1/b + 1/b = alpha exactly
    CHECK(uncovered(classify(a, b, b, LagQuadrant::PosNeg)));
  }
  SUBCASE("fast rows, slow columns") {
    const auto& r = regime(classify(a, 3.0, 0.8, LagQuadrant::PosNeg));
    CHECK(r.case_id == 2);
    const auto* st = std::get_if<SeriesTimesBetaC>(&r.constant);
    REQUIRE(st != nullptr);
    CHECK(st->beta.p == doctest::Approx(0.8));
    CHECK(st->beta.q == doctest::Approx(0.8 * (a - 1.0)));
  }
  SUBCASE("boundary rows, slow columns carry a log") {
    const auto& r = regime(classify(a, 2.0, 0.8, LagQuadrant::PosNeg));
    CHECK(r.case_id == 3);
    REQUIRE(r.rate.logs.size() == 1);
    CHECK(std::holds_alternative<BetaIntegralOnlyC>(r.constant));
  }
  SUBCASE("unit exponent against fast decay is uncovered") {
    CHECK(uncovered(classify(a, 3.0, 1.0, LagQuadrant::PosNeg)));
    CHECK(uncovered(classify(a, 1.0, 3.0, LagQuadrant::PosNeg)));
  }
}

TEST_CASE("mixed-sign quadrant: direction trichotomy for fast decay") {
  const double a = 1.5;
  CHECK_THROWS_AS(classify(a, 3.0, 3.0, LagQuadrant::PosNeg),
                  DirectionRequiredError);

  const auto& za = regime(
      classify(a, 3.0, 3.0, LagQuadrant::PosNeg, Direction::to_zero()));
  CHECK(za.case_id == 4);
  CHECK(za.subcase == 'a');
  CHECK(za.rate.n_exp == doctest::Approx(-3.0 * (a - 1.0)));
  CHECK(za.rate.m_exp == doctest::Approx(-3.0));
  const auto* pa = std::get_if<ProductSeriesC>(&za.constant);
  REQUIRE(pa != nullptr);
  CHECK(pa->row.weight_power == doctest::Approx(1.0));
  CHECK(pa->col.weight_power == doctest::Approx(a - 1.0));

  const auto& zb = regime(
      classify(a, 3.0, 3.0, LagQuadrant::PosNeg, Direction::to_const(2.0)));
  CHECK(zb.case_id == 4);
  CHECK(zb.subcase == 'b');
  const auto* cb = std::get_if<CMixedSeriesC>(&zb.constant);
  REQUIRE(cb != nullptr);
  CHECK_FALSE(cb->printed_form);
  CHECK(cb->prefactor == doctest::Approx(0.5));  // 1/c
  CHECK(cb->row_scale == doctest::Approx(2.0));  // c

  const auto& zc = regime(
      classify(a, 3.0, 3.0, LagQuadrant::PosNeg, Direction::to_infinity()));
  CHECK(zc.case_id == 4);
  CHECK(zc.subcase == 'c');
  CHECK(zc.rate.n_exp == doctest::Approx(-3.0));
  CHECK(zc.rate.m_exp == doctest::Approx(-3.0 * (a - 1.0)));
  const auto* pc = std::get_if<ProductSeriesC>(&zc.constant);
  REQUIRE(pc != nullptr);
  CHECK(pc->row.weight_power == doctest::Approx(a - 1.0));
  CHECK(pc->col.weight_power == doctest::Approx(1.0));
}

TEST_CASE("mixed-sign slow band below the mass-balance line") {
  const double a = 1.5;
  // 1/1.8 + 1/1.8 = 1.11 < 1.5, both exponents in (1, 2)
  CHECK_THROWS_AS(classify(a, 1.8, 1.8, LagQuadrant::PosNeg),
                  DirectionRequiredError);
  const auto& rz = regime(
      classify(a, 1.8, 1.8, LagQuadrant::PosNeg, Direction::to_zero()));
  CHECK(rz.case_id == 6);
  CHECK(rz.subcase == 'a');
  const auto* mix = std::get_if<SeriesVIntegralMixC>(&rz.constant);
  REQUIRE(mix != nullptr);
  CHECK(mix->series_axis == Axis::Row);
  CHECK(mix->integral_beta == doctest::Approx(1.8));

  const auto& rb = regime(
      classify(a, 1.8, 1.8, LagQuadrant::PosNeg, Direction::to_const(3.0)));
  CHECK(rb.case_id == 6);
  CHECK(rb.subcase == 'b');
  const auto* cm = std::get_if<CMixedSeriesC>(&rb.constant);
  REQUIRE(cm != nullptr);
  CHECK(cm->printed_form);  // the published scale, kept verbatim
  CHECK(cm->row_scale == doctest::Approx(9.0));  // c^2 as printed

  const auto& ri = regime(
      classify(a, 1.8, 1.8, LagQuadrant::PosNeg, Direction::to_infinity()));
  CHECK(ri.case_id == 6);
  CHECK(ri.subcase == 'c');
  const auto* mi = std::get_if<SeriesVIntegralMixC>(&ri.constant);
  REQUIRE(mi != nullptr);
  CHECK(mi->series_axis == Axis::Col);
}

TEST_CASE("mixed-sign boundary rows at the gaussian endpoint are uncovered") {
  // alpha = 2: the log-corrected mixed-sign rows do not apply.
  CHECK(uncovered(classify(2.0, 3.0, 1.0, LagQuadrant::PosNeg,
                           Direction::to_zero())));
  CHECK(uncovered(classify(2.0, 1.0, 1.0, LagQuadrant::PosNeg,
                           Direction::to_zero())));
}

TEST_CASE("mixed-sign boundary rows below the gaussian endpoint") {
  const double a = 1.5;
  const auto& r7 = regime(classify(a, 3.0, 2.0, LagQuadrant::PosNeg,
                                   Direction::to_zero()));
  CHECK(r7.case_id == 7);
  CHECK(r7.subcase == 'a');
  REQUIRE(r7.rate.logs.size() == 1);
  const auto& r8 = regime(classify(a, 2.0, 1.5, LagQuadrant::PosNeg,
                                   Direction::to_infinity()));
  CHECK(r8.case_id == 8);
  CHECK(r8.subcase == 'c');
  const auto& r9 = regime(classify(a, 2.0, 2.0, LagQuadrant::PosNeg,
                                   Direction::to_const(1.0)));
  CHECK(r9.case_id == 9);
  CHECK(r9.subcase == 'b');
}

TEST_CASE("mixed-sign mirror inverts the direction") {
  const double a = 1.5;
  // (mid, high) has no direct row; it mirrors (high, mid).
  const auto& direct = regime(classify(a, 3.0, 1.5, LagQuadrant::PosNeg,
                                       Direction::to_zero()));
  const auto& mirror = regime(classify(a, 1.5, 3.0, LagQuadrant::PosNeg,
                                       Direction::to_infinity()));
  CHECK(direct.case_id == 5);
  CHECK(mirror.case_id == 5);
  CHECK(mirror.mirrored);
  CHECK(mirror.rate.n_exp == doctest::Approx(direct.rate.m_exp));
  CHECK(mirror.rate.m_exp == doctest::Approx(direct.rate.n_exp));
  // The caller's own direction is what the regime reports.
  CHECK(mirror.direction.kind == DirectionKind::ToInfinity);
}

TEST_CASE("regimes keep the caller's parameter order") {
  const auto& r = regime(classify(1.5, 1.5, 3.0, LagQuadrant::PosPos));
  CHECK(r.beta1 == doctest::Approx(1.5));
  CHECK(r.beta2 == doctest::Approx(3.0));
  CHECK(r.alpha == doctest::Approx(1.5));
  CHECK_FALSE(r.summary.empty());
  CHECK_FALSE(r.label().empty());
  CHECK_FALSE(describe(r.constant).empty());
}

TEST_CASE("random interior points always match exactly one row") {
  auto gen = oracle::rng(123456);
  std::uniform_real_distribution<double> al(1.05, 1.95);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  int seen_mirrored = 0;
  for (int t = 0; t < 2000; ++t) {
    const double a = al(gen);
    const double b = 1.0 / (a - 1.0);
    auto draw_beta = [&] {
      // Jittered draws that avoid the measure-zero boundaries.
      const double zones[4][2] = {{1.0 / a + 0.01, 0.99},
                                  {1.01, b - 0.01},
                                  {b + 0.01, b + 2.0},
                                  {b + 2.0, b + 6.0}};
      const int z = static_cast<int>(unif(gen) * 4.0) % 4;
      const double lo = zones[z][0], hi = std::fmax(zones[z][1], lo + 1e-3);
      return lo + (hi - lo) * unif(gen);
    };
    const double b1 = draw_beta(), b2 = draw_beta();
    const auto cls = classify(a, b1, b2, LagQuadrant::PosPos);
    const auto& r = regime(cls);
    CHECK(r.case_id >= 1);
    CHECK(r.case_id <= 6);
    if (r.mirrored) ++seen_mirrored;
    // Swapping the axes must land in the same row with flipped orientation.
    const auto& sw = regime(classify(a, b2, b1, LagQuadrant::PosPos));
    CHECK(sw.case_id == r.case_id);
    CHECK(sw.rate.n_exp == doctest::Approx(r.rate.m_exp));
    CHECK(sw.rate.m_exp == doctest::Approx(r.rate.n_exp));
  }
  CHECK(seen_mirrored > 0);
}

}  // TEST_SUITE
