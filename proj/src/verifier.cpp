// SPDX-License-Identifier: MIT
// Copyright (c) 2026 stablefield-cov contributors

#include "stablefield/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "stablefield/errors.hpp"

namespace stablefield {

namespace {

long long clamp_lag(double value, long long lo) {
  if (!std::isfinite(value)) {
    throw InvalidParameterError("lag schedule produced a non-finite lag");
  }
  return std::max(lo, static_cast<long long>(std::llround(value)));
}

RhoFn default_rho_fn(double rel_tol) {
  return [rel_tol](const FieldSpec& spec, long long k1, long long k2) {
    CovOptions opt;
    opt.rel_tol = rel_tol;
    return rho(spec, k1, k2, opt);
  };
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return buf;
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Converging: return "Converging";
    case Verdict::Diverging: return "Diverging";
    default: return "Inconclusive";
  }
}

std::vector<std::pair<long long, long long>> lag_sequence(
    const Regime& regime, const Schedule& schedule) {
  if (schedule.n_min < 2 || schedule.n_max < schedule.n_min ||
      schedule.growth < 2) {
    throw InvalidParameterError(
        "schedule needs 2 <= n_min <= n_max and growth >= 2");
  }
  std::vector<std::pair<long long, long long>> lags;
  for (long long n = schedule.n_min; n <= schedule.n_max;
       n *= schedule.growth) {
    long long m = 0;
    if (regime.quadrant == LagQuadrant::PosPos) {
      switch (schedule.diag) {
        case DiagonalKind::Equal: m = n; break;
        case DiagonalKind::SquareM: m = n * n; break;
        case DiagonalKind::SqrtM:
          m = clamp_lag(std::ceil(std::sqrt(static_cast<double>(n))), 2);
          break;
      }
      lags.emplace_back(n, m);
    } else {
      // Pick m so that h = m^{-beta2} / n^{-beta1} follows the direction.
      const double r = regime.beta1 / regime.beta2;
      const double nr = std::pow(static_cast<double>(n), r);
      const double ln = std::log(static_cast<double>(n));
      switch (regime.direction.kind) {
        case DirectionKind::ToConst:
          m = clamp_lag(std::pow(regime.direction.c, -1.0 / regime.beta2) * nr,
                        1);
          break;
        case DirectionKind::ToZero:
          // h -> 0 requires m to outgrow the constant-h curve.
          m = clamp_lag(nr * ln, 1);
          break;
        case DirectionKind::ToInfinity:
          m = clamp_lag(nr / ln, 2);
          break;
      }
      lags.emplace_back(n, -m);
    }
  }
  return lags;
}

ConvergenceReport run_convergence(const FieldSpec& spec, const Regime& regime,
                                  const VerifyOptions& opts, RhoFn rho_fn) {
  if (!rho_fn) rho_fn = default_rho_fn(opts.rho_rel_tol);

  ConvergenceReport report;
  report.regime = regime;
  report.gap_target =
      opts.gap_target.value_or(regime.rate.logs.empty() ? 0.05 : 0.10);

  ConstOptions copt;
  copt.rel_tol = opts.const_rel_tol;
  const ConstantValue cv = constant_eval(spec, regime, copt);
  report.constant = cv.value;
  report.constant_error = cv.error_bound;

  std::ostringstream notes;
  if (!cv.converged) {
    notes << "limiting constant evaluated to requested tolerance "
             "unreachable (error bound "
          << fmt(cv.error_bound) << "); ";
  }

  const auto lags = lag_sequence(regime, opts.schedule);
  const double denom = std::max(std::fabs(cv.value), 1e-300);
  for (const auto& [k1, k2] : lags) {
    const long long n = k1;
    const long long m = std::llabs(k2);
    ReportRow row;
    row.n = n;
    row.m = m;
    const CovResult r = rho_fn(spec, k1, k2);
    row.rho = r.value;
    row.rho_error = r.error_bound;
    row.rate = regime.rate.eval(static_cast<double>(n),
                                static_cast<double>(m));
    row.ratio = row.rho / row.rate;
    row.predicted = cv.value;
    row.rel_gap = std::fabs(row.ratio - cv.value) / denom;
    report.rows.push_back(row);
    report.h_values.push_back(std::pow(static_cast<double>(n), regime.beta1) *
                              std::pow(static_cast<double>(m), -regime.beta2));
  }

  // Lag-rounding sanity: on a constant-direction schedule the realised
  // h = m^{-beta2}/n^{-beta1} must sit near the requested constant over the
  // last third of the rows.
  if (regime.quadrant == LagQuadrant::PosNeg &&
      regime.direction.kind == DirectionKind::ToConst) {
    const std::size_t from = report.rows.size() - report.rows.size() / 3;
    for (std::size_t i = from; i < report.rows.size(); ++i) {
      const double rel = report.h_values[i] / regime.direction.c - 1.0;
      if (std::fabs(rel) > 0.1) {
        notes << "realised h drifted " << fmt(100.0 * rel)
              << "% from the requested constant at n=" << report.rows[i].n
              << "; ";
      }
    }
  }

  if (report.rows.size() < 4) {
    report.verdict = Verdict::Inconclusive;
    notes << "schedule too short to judge a trend (need 4 rows, got "
          << report.rows.size() << ")";
    report.explanation = notes.str();
    return report;
  }

  const std::size_t last = report.rows.size() - 1;
  bool decreasing = true;
  std::size_t bad_step = 0;
  double slope = 0.0;
  // A step only counts as a rise when it clears the measurement noise of the
  // two rows involved; equal gaps at round-off level are not a trend.
  const auto gap_noise = [&](std::size_t i) {
    const double rate = std::max(std::fabs(report.rows[i].rate), 1e-300);
    return report.rows[i].rho_error / rate / denom;
  };
  for (std::size_t i = last - 3; i < last; ++i) {
    const double g0 = std::max(report.rows[i].rel_gap, 1e-300);
    const double g1 = std::max(report.rows[i + 1].rel_gap, 1e-300);
    slope += std::log2(g1 / g0);
    const double allowance = gap_noise(i) + gap_noise(i + 1) + 1e-12;
    if (decreasing &&
        report.rows[i + 1].rel_gap >= report.rows[i].rel_gap + allowance) {
      decreasing = false;
      bad_step = i + 1;
    }
  }
  report.trend_slope = slope / 3.0;
  const double final_gap = report.rows[last].rel_gap;
  if (!decreasing) {
    report.verdict = Verdict::Diverging;
    notes << "relative gap rose from " << fmt(report.rows[bad_step - 1].rel_gap)
          << " to " << fmt(report.rows[bad_step].rel_gap) << " at n="
          << report.rows[bad_step].n;
  } else if (final_gap <= report.gap_target) {
    report.verdict = Verdict::Converging;
    notes << "relative gap fell monotonically over the last three doublings "
             "to "
          << fmt(final_gap) << " <= target " << fmt(report.gap_target);
  } else {
    report.verdict = Verdict::Inconclusive;
    notes << "relative gap is falling but still " << fmt(final_gap)
          << " > target " << fmt(report.gap_target)
          << " at n=" << report.rows[last].n
          << "; a longer schedule is needed";
  }
  report.explanation = notes.str();
  return report;
}

void write_csv(const ConvergenceReport& report, std::ostream& os) {
  os << "n,m,rho,rho_error,rate,ratio,predicted,rel_gap\n";
  char buf[256];
  for (const auto& r : report.rows) {
    std::snprintf(buf, sizeof(buf),
                  "%lld,%lld,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g\n", r.n, r.m,
                  r.rho, r.rho_error, r.rate, r.ratio, r.predicted, r.rel_gap);
    os << buf;
  }
}

void write_json(const ConvergenceReport& report, std::ostream& os) {
  nlohmann::json j;
  j["regime"] = {
      {"label", report.regime.label()},
      {"summary", report.regime.summary},
      {"alpha", report.regime.alpha},
      {"beta1", report.regime.beta1},
      {"beta2", report.regime.beta2},
      {"rate", report.regime.rate.describe()},
      {"constant_recipe", describe(report.regime.constant)},
  };
  j["constant"] = report.constant;
  j["constant_error"] = report.constant_error;
  j["gap_target"] = report.gap_target;
  j["trend_slope"] = report.trend_slope;
  j["verdict"] = to_string(report.verdict);
  j["explanation"] = report.explanation;
  j["rows"] = nlohmann::json::array();
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    const auto& r = report.rows[i];
    j["rows"].push_back({{"n", r.n},
                         {"m", r.m},
                         {"rho", r.rho},
                         {"rho_error", r.rho_error},
                         {"rate", r.rate},
                         {"ratio", r.ratio},
                         {"predicted", r.predicted},
                         {"rel_gap", r.rel_gap},
                         {"h", report.h_values[i]}});
  }
  os << j.dump(2) << '\n';
}

AdjudicationReport adjudicate_cmixed(const FieldSpec& spec,
                                     const Regime& regime,
                                     const VerifyOptions& opts, RhoFn rho_fn) {
  const auto* recipe = std::get_if<CMixedSeriesC>(&regime.constant);
  if (recipe == nullptr || !recipe->printed_form) {
    throw InvalidParameterError(
        "adjudication applies only to the constant-direction regime whose "
        "recipe has a published alternative scale");
  }
  if (!rho_fn) rho_fn = default_rho_fn(opts.rho_rel_tol);

  AdjudicationReport report;
  report.regime = regime;

  ConstOptions copt;
  copt.rel_tol = opts.const_rel_tol;
  copt.cmixed_printed_form = true;
  report.printed_constant = constant_eval(spec, regime, copt).value;
  copt.cmixed_printed_form = false;
  report.consistent_constant = constant_eval(spec, regime, copt).value;

  const auto lags = lag_sequence(regime, opts.schedule);
  for (const auto& [k1, k2] : lags) {
    const long long n = k1;
    const long long m = std::llabs(k2);
    ReportRow row;
    row.n = n;
    row.m = m;
    const CovResult r = rho_fn(spec, k1, k2);
    row.rho = r.value;
    row.rho_error = r.error_bound;
    row.rate = regime.rate.eval(static_cast<double>(n),
                                static_cast<double>(m));
    row.ratio = row.rho / row.rate;
    row.predicted = report.printed_constant;
    row.rel_gap = std::fabs(row.ratio - report.printed_constant) /
                  std::fabs(report.printed_constant);
    report.rows.push_back(row);
    report.gap_printed.push_back(row.rel_gap);
    report.gap_consistent.push_back(
        std::fabs(row.ratio - report.consistent_constant) /
        std::fabs(report.consistent_constant));
  }

  std::ostringstream conclusion;
  conclusion << "printed constant " << fmt(report.printed_constant)
             << ", consistent constant " << fmt(report.consistent_constant)
             << "; final measured ratio "
             << fmt(report.rows.back().ratio) << " (gap "
             << fmt(report.gap_printed.back()) << " vs printed, "
             << fmt(report.gap_consistent.back()) << " vs consistent): ";
  const double gp = report.gap_printed.back();
  const double gc = report.gap_consistent.back();
  if (gc < 0.5 * gp) {
    conclusion << "the measurements support the internally consistent scale "
                  "factor; the published one appears to be a typo";
  } else if (gp < 0.5 * gc) {
    conclusion << "the measurements support the published scale factor";
  } else {
    conclusion << "the measurements do not separate the two candidates at "
                  "this schedule depth";
  }
  report.conclusion = conclusion.str();
  return report;
}

}  // namespace stablefield
