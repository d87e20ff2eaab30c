// SPDX-License-Identifier: MIT
// Copyright (c) 2026 stablefield-cov contributors
#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace stablefield {

/// @brief Supported weight families for the moving-average coefficients.
enum class WeightKind { Constant, Rational, Table };

/// @brief Weight surface w(i, j) multiplying the separable power-law profile.
///
/// All families converge to a constant along rows, columns, and jointly, so
/// the profile (1+i)^{-beta1} (1+j)^{-beta2} controls the decay:
///  - Constant: w = value everywhere (value > 0).
///  - Rational: w = 1 + row_coef/(1+i) + col_coef/(1+j) with
///    |row_coef| + |col_coef| < 1, hence w stays positive and tends to 1.
///  - Table:    w = values[i*cols + j] on the finite patch i < rows,
///    j < cols and w = 1 outside.  Entries may be negative but not zero.
struct WeightFamily {
  WeightKind kind = WeightKind::Constant;
  double value = 1.0;       // Constant
  double row_coef = 0.0;    // Rational
  double col_coef = 0.0;    // Rational
  std::size_t rows = 0;     // Table patch extent
  std::size_t cols = 0;
  std::vector<double> values;  // row-major, size rows*cols

  static WeightFamily constant(double v);
  static WeightFamily rational(double row_coef, double col_coef);
  static WeightFamily table(std::size_t rows, std::size_t cols,
                            std::vector<double> values);

  /// Weight at (possibly non-integer) position (i, j) >= 0.
  double at(double i, double j) const;
  /// Limit of w(i, j) as j grows, as a function of i.
  double row_limit(double i) const;
  /// Limit of w(i, j) as i grows, as a function of j.
  double col_limit(double j) const;
  /// Infimum/supremum of |w| over the lattice.
  std::pair<double, double> bounds() const;
  /// First index from which w(t, j)*|profile| is guaranteed nonincreasing in
  /// t for any fixed exponent >= beta_min along that axis (and likewise for
  /// the axis limits).  Constant/table families return the patch extent.
  long long monotone_start_row(double beta_min) const;
  long long monotone_start_col(double beta_min) const;
};

/// @brief One explicitly placed coefficient.
struct Atom {
  long long i = 0;
  long long j = 0;
  double value = 0.0;
};

/// @brief Full description of a two-dimensional stable moving-average field.
///
/// The innovations are symmetric alpha-stable; the coefficient at (i, j) is
/// weights(i,j) * (1+i)^{-beta1} * (1+j)^{-beta2}.  When override_atoms is
/// non-empty the coefficient field is exactly that finite atom set instead.
struct FieldSpec {
  double alpha = 1.5;
  double beta1 = 2.0;
  double beta2 = 2.0;
  WeightFamily weights{};
  std::vector<Atom> override_atoms{};

  bool has_override() const { return !override_atoms.empty(); }
};

/// @brief Validate a field description; throws InvalidParameterError with a
/// message naming the offending entry.  Requires alpha in (0,2] and
/// beta_k > 1/alpha so the coefficient array is summable to the alpha-th
/// power.
void validate(const FieldSpec& spec);

/// @brief Coefficient at lattice point (i, j) (continuous extension for
/// real-valued arguments, used by tail integrals).  Override fields are only
/// defined on the lattice.
double coefficient(const FieldSpec& spec, double i, double j);

/// @brief Coefficient at an exact lattice point; honours overrides.
double coefficient_lattice(const FieldSpec& spec, long long i, long long j);

/// @brief Human-readable one-line description (for CLI output).
std::string describe(const FieldSpec& spec);

}  // namespace stablefield
