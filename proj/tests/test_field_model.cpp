// SPDX-License-Identifier: MIT
// Copyright (c) 2026 stablefield-cov contributors
#include <doctest.h>

#include <cmath>

#include "stablefield/errors.hpp"
#include "stablefield/field_model.hpp"

using namespace stablefield;

TEST_SUITE("field_model") {

TEST_CASE("validation accepts the default field") {
  FieldSpec spec;
  CHECK_NOTHROW(validate(spec));
}

TEST_CASE("validation rejects bad stability index and exponents") {
  FieldSpec spec;
  spec.alpha = 0.0;
  CHECK_THROWS_AS(validate(spec), InvalidParameterError);
  spec.alpha = 2.5;
  CHECK_THROWS_AS(validate(spec), InvalidParameterError);
  spec.alpha = 1.5;
  spec.beta1 = 1.0 / spec.alpha;  // boundary is excluded
  CHECK_THROWS_AS(validate(spec), InvalidParameterError);
  spec.beta1 = 2.0;
  spec.beta2 = 0.5;
  CHECK_THROWS_AS(validate(spec), InvalidParameterError);
}

TEST_CASE("validation rules per weight family") {
  FieldSpec spec;
  spec.weights = WeightFamily::constant(0.0);
  CHECK_THROWS_AS(validate(spec), InvalidParameterError);
  spec.weights = WeightFamily::rational(0.6, 0.5);  // span 1.1 >= 1
  CHECK_THROWS_AS(validate(spec), InvalidParameterError);
  spec.weights = WeightFamily::rational(0.3, -0.4);
  CHECK_NOTHROW(validate(spec));
  spec.weights = WeightFamily::table(2, 2, {1.0, -2.0, 0.5});  // size mismatch
  CHECK_THROWS_AS(validate(spec), InvalidParameterError);
  spec.weights = WeightFamily::table(2, 2, {1.0, -2.0, 0.5, 0.0});  // zero
  CHECK_THROWS_AS(validate(spec), InvalidParameterError);
  spec.weights = WeightFamily::table(2, 2, {1.0, -2.0, 0.5, 3.0});
  CHECK_NOTHROW(validate(spec));
}

TEST_CASE("override atoms: domain, duplicates, zero values") {
  FieldSpec spec;
  spec.override_atoms = {{0, 0, 1.0}, {2, 1, -0.5}};
  CHECK(spec.has_override());
  CHECK_NOTHROW(validate(spec));
  spec.override_atoms.push_back({2, 1, 0.25});  // duplicate position
  CHECK_THROWS_AS(validate(spec), InvalidParameterError);
  spec.override_atoms = {{-1, 0, 1.0}};
  CHECK_THROWS_AS(validate(spec), InvalidParameterError);
  spec.override_atoms = {{0, 0, 0.0}};
  CHECK_THROWS_AS(validate(spec), InvalidParameterError);
}

TEST_CASE("coefficient values for each family") {
  FieldSpec spec;
  spec.beta1 = 2.0;
  spec.beta2 = 3.0;
  SUBCASE("constant") {
    spec.weights = WeightFamily::constant(2.0);
    CHECK(coefficient_lattice(spec, 1, 2) ==
          doctest::Approx(2.0 * std::pow(2.0, -2.0) * std::pow(3.0, -3.0)));
  }
  SUBCASE("rational") {
    spec.weights = WeightFamily::rational(0.5, -0.25);
    const double w = 1.0 + 0.5 / 2.0 - 0.25 / 3.0;
    CHECK(coefficient_lattice(spec, 1, 2) ==
          doctest::Approx(w * std::pow(2.0, -2.0) * std::pow(3.0, -3.0)));
  }
  SUBCASE("table patch and off-patch") {
    spec.weights = WeightFamily::table(1, 2, {5.0, -1.0});
    CHECK(coefficient_lattice(spec, 0, 1) ==
          doctest::Approx(-1.0 * std::pow(2.0, -3.0)));
    // Outside the patch the weight is one.
    CHECK(coefficient_lattice(spec, 3, 0) ==
          doctest::Approx(std::pow(4.0, -2.0)));
  }
  SUBCASE("negative lattice indices vanish") {
    CHECK(coefficient_lattice(spec, -1, 0) == 0.0);
    CHECK(coefficient_lattice(spec, 0, -2) == 0.0);
  }
}

TEST_CASE("override replaces the lattice entirely") {
  FieldSpec spec;
  spec.override_atoms = {{0, 0, 1.0}, {3, 2, -0.5}};
  CHECK(coefficient_lattice(spec, 0, 0) == 1.0);
  CHECK(coefficient_lattice(spec, 3, 2) == -0.5);
  CHECK(coefficient_lattice(spec, 1, 1) == 0.0);
}

TEST_CASE("weight limits along rows and columns") {
  auto rational = WeightFamily::rational(0.5, -0.25);
  // Limit in j of 1 + 0.5/(1+i) - 0.25/(1+j) is 1 + 0.5/(1+i).
  CHECK(rational.row_limit(1.0) == doctest::Approx(1.25));
  CHECK(rational.col_limit(3.0) == doctest::Approx(1.0 - 0.25 / 4.0));
  auto table = WeightFamily::table(2, 2, {4.0, 4.0, 4.0, 4.0});
  CHECK(table.row_limit(0.0) == 1.0);
  CHECK(table.col_limit(5.0) == 1.0);
  auto constant = WeightFamily::constant(3.0);
  CHECK(constant.row_limit(9.0) == 3.0);
}

TEST_CASE("bounds bracket the weight magnitude") {
  auto rational = WeightFamily::rational(0.5, -0.25);
  const auto [lo, hi] = rational.bounds();
  for (double i : {0.0, 1.0, 7.0, 100.0}) {
    for (double j : {0.0, 2.0, 50.0}) {
      const double w = std::fabs(rational.at(i, j));
      CHECK(w >= lo - 1e-15);
      CHECK(w <= hi + 1e-15);
    }
  }
}

TEST_CASE("monotone start makes the weighted coefficient nonincreasing") {
  auto w = WeightFamily::rational(-0.6, 0.3);
  const double beta = 1.2;
  const long long start = w.monotone_start_row(beta);
  FieldSpec spec;
  spec.beta1 = beta;
  spec.beta2 = 2.0;
  spec.weights = w;
  double prev = coefficient_lattice(spec, start, 0);
  for (long long i = start + 1; i < start + 200; ++i) {
    const double cur = coefficient_lattice(spec, i, 0);
    CHECK(cur <= prev * (1 + 1e-12));
    prev = cur;
  }
}

TEST_CASE("describe names the family") {
  FieldSpec spec;
  CHECK(describe(spec).find("constant") != std::string::npos);
  spec.override_atoms = {{0, 0, 1.0}};
  CHECK(describe(spec).find("finite support") != std::string::npos);
}

}  // TEST_SUITE
