// SPDX-License-Identifier: MIT
// Copyright (c) 2026 stablefield-cov contributors
#include "stablefield/field_model.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "stablefield/errors.hpp"

namespace stablefield {

WeightFamily WeightFamily::constant(double v) {
  WeightFamily w;
  w.kind = WeightKind::Constant;
  w.value = v;
  return w;
}

WeightFamily WeightFamily::rational(double row_coef, double col_coef) {
  WeightFamily w;
  w.kind = WeightKind::Rational;
  w.row_coef = row_coef;
  w.col_coef = col_coef;
  return w;
}

WeightFamily WeightFamily::table(std::size_t rows, std::size_t cols,
                                 std::vector<double> values) {
  WeightFamily w;
  w.kind = WeightKind::Table;
  w.rows = rows;
  w.cols = cols;
  w.values = std::move(values);
  return w;
}

double WeightFamily::at(double i, double j) const {
  switch (kind) {
    case WeightKind::Constant:
      return value;
    case WeightKind::Rational:
      return 1.0 + row_coef / (1.0 + i) + col_coef / (1.0 + j);
    case WeightKind::Table: {
      if (i >= 0.0 && j >= 0.0 && i < static_cast<double>(rows) &&
          j < static_cast<double>(cols)) {
        const auto ii = static_cast<std::size_t>(i);
        const auto jj = static_cast<std::size_t>(j);
        return values[ii * cols + jj];
      }
      return 1.0;
    }
  }
  return 1.0;
}

double WeightFamily::row_limit(double i) const {
  switch (kind) {
    case WeightKind::Constant:
      return value;
    case WeightKind::Rational:
      return 1.0 + row_coef / (1.0 + i);
    case WeightKind::Table:
      return 1.0;  // the patch is finite in j
  }
  return 1.0;
}

double WeightFamily::col_limit(double j) const {
  switch (kind) {
    case WeightKind::Constant:
      return value;
    case WeightKind::Rational:
      return 1.0 + col_coef / (1.0 + j);
    case WeightKind::Table:
      return 1.0;
  }
  return 1.0;
}

std::pair<double, double> WeightFamily::bounds() const {
  switch (kind) {
    case WeightKind::Constant:
      return {value, value};
    case WeightKind::Rational: {
      const double span = std::fabs(row_coef) + std::fabs(col_coef);
      return {1.0 - span, 1.0 + span};
    }
    case WeightKind::Table: {
      double lo = 1.0, hi = 1.0;
      for (double v : values) {
        lo = std::min(lo, std::fabs(v));
        hi = std::max(hi, std::fabs(v));
      }
      return {lo, hi};
    }
  }
  return {1.0, 1.0};
}

namespace {

// For w(t) = 1 + a/(1+t+s), f(t) = w(t) * (1+t+s')^{-beta} is nonincreasing
// once beta/(1+t) >= |a| / ((1+t)^2 (1 - span)); a conservative integer bound
// independent of the shifts s, s' >= 0.
long long rational_monotone_start(double a, double span, double beta_min) {
  if (a >= 0.0) return 0;  // both factors already nonincreasing
  const double w_min = 1.0 - span;
  const double t = std::fabs(a) / (beta_min * w_min);
  return static_cast<long long>(std::ceil(std::max(0.0, t)));
}

}  // namespace

long long WeightFamily::monotone_start_row(double beta_min) const {
  switch (kind) {
    case WeightKind::Constant:
      return 0;
    case WeightKind::Rational:
      return rational_monotone_start(
          row_coef, std::fabs(row_coef) + std::fabs(col_coef), beta_min);
    case WeightKind::Table:
      return static_cast<long long>(rows);
  }
  return 0;
}

long long WeightFamily::monotone_start_col(double beta_min) const {
  switch (kind) {
    case WeightKind::Constant:
      return 0;
    case WeightKind::Rational:
      return rational_monotone_start(
          col_coef, std::fabs(row_coef) + std::fabs(col_coef), beta_min);
    case WeightKind::Table:
      return static_cast<long long>(cols);
  }
  return 0;
}

void validate(const FieldSpec& spec) {
  if (!(spec.alpha > 0.0) || spec.alpha > 2.0)
    throw InvalidParameterError("alpha must lie in (0, 2]");
  if (spec.has_override()) {
    std::set<std::pair<long long, long long>> seen;
    for (const Atom& a : spec.override_atoms) {
      if (a.i < 0 || a.j < 0)
        throw InvalidParameterError("override atom indices must be >= 0");
      if (a.value == 0.0)
        throw InvalidParameterError("override atom values must be nonzero");
      if (!seen.insert({a.i, a.j}).second)
        throw InvalidParameterError("duplicate override atom position");
    }
    return;  // betas/weights are unused for finite-support fields
  }
  const double min_beta = 1.0 / spec.alpha;
  if (!(spec.beta1 > min_beta))
    throw InvalidParameterError(
        "beta1 too small: need beta1 > 1/alpha for a summable field");
  if (!(spec.beta2 > min_beta))
    throw InvalidParameterError(
        "beta2 too small: need beta2 > 1/alpha for a summable field");
  const WeightFamily& w = spec.weights;
  switch (w.kind) {
    case WeightKind::Constant:
      if (!(w.value > 0.0))
        throw InvalidParameterError("constant weight must be positive");
      break;
    case WeightKind::Rational:
      if (!(std::fabs(w.row_coef) + std::fabs(w.col_coef) < 1.0))
        throw InvalidParameterError(
            "rational weight coefficients must satisfy |row|+|col| < 1");
      break;
    case WeightKind::Table:
      if (w.values.size() != w.rows * w.cols)
        throw InvalidParameterError("weight table size mismatch");
      for (double v : w.values)
        if (v == 0.0 || !std::isfinite(v))
          throw InvalidParameterError("weight table entries must be nonzero");
      break;
  }
}

double coefficient(const FieldSpec& spec, double i, double j) {
  return spec.weights.at(i, j) * std::pow(1.0 + i, -spec.beta1) *
         std::pow(1.0 + j, -spec.beta2);
}

double coefficient_lattice(const FieldSpec& spec, long long i, long long j) {
  if (i < 0 || j < 0) return 0.0;
  if (spec.has_override()) {
    for (const Atom& a : spec.override_atoms)
      if (a.i == i && a.j == j) return a.value;
    return 0.0;
  }
  return coefficient(spec, static_cast<double>(i), static_cast<double>(j));
}

std::string describe(const FieldSpec& spec) {
  std::ostringstream os;
  os << "alpha=" << spec.alpha;
  if (spec.has_override()) {
    os << ", finite support (" << spec.override_atoms.size() << " atoms)";
    return os.str();
  }
  os << ", beta=(" << spec.beta1 << ", " << spec.beta2 << "), weights=";
  switch (spec.weights.kind) {
    case WeightKind::Constant:
      os << "constant(" << spec.weights.value << ")";
      break;
    case WeightKind::Rational:
      os << "rational(" << spec.weights.row_coef << ", "
         << spec.weights.col_coef << ")";
      break;
    case WeightKind::Table:
      os << "table(" << spec.weights.rows << "x" << spec.weights.cols << ")";
      break;
  }
  return os.str();
}

}  // namespace stablefield
