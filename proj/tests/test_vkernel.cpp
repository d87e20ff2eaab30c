// SPDX-License-Identifier: MIT
// Copyright (c) 2026 stablefield-cov contributors
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "oracles.hpp"
#include "stablefield/vkernel.hpp"

using stablefield::signed_power;
using stablefield::v_kernel;
using stablefield::v_kernel_dx;

namespace {

// Independent complex-step oracle for dV/dx: exact to machine precision,
// no cancellation.
double dx_complex_step(double alpha, double x, double y) {
  const double h = 1e-20;
  const std::complex<double> xc(x, h);
  const std::complex<double> r2 = xc * xc + y * y;
  const std::complex<double> v =
      xc * y * std::pow(r2, 0.5 * alpha - 1.0);
  return v.imag() / h;
}

}  // namespace

TEST_SUITE("vkernel") {

TEST_CASE("signed power is odd and matches pow on positives") {
  CHECK(signed_power(2.0, 1.5) == doctest::Approx(std::pow(2.0, 1.5)));
  CHECK(signed_power(-2.0, 1.5) == doctest::Approx(-std::pow(2.0, 1.5)));
  CHECK(signed_power(0.0, 0.7) == 0.0);
  CHECK(signed_power(-1.0, 2.0) == doctest::Approx(-1.0));
}

TEST_CASE("kernel closed forms") {
  // alpha = 2 collapses to the plain product.
  CHECK(v_kernel(2.0, 3.0, -4.0) == doctest::Approx(-12.0).epsilon(1e-14));
  // Equal arguments: 2^{(alpha-2)/2} |x|^alpha with the product's sign.
  for (double alpha : {0.5, 1.0, 1.5, 2.0}) {
    CHECK(v_kernel(alpha, 3.0, 3.0) ==
          doctest::Approx(std::pow(2.0, 0.5 * alpha - 1.0) *
                          std::pow(3.0, alpha))
              .epsilon(1e-14));
  }
  // One vanishing argument kills the term even though the exponent is
  // negative for alpha < 2.
  CHECK(v_kernel(1.5, 0.0, 5.0) == 0.0);
  CHECK(v_kernel(1.5, 5.0, 0.0) == 0.0);
}

TEST_CASE("symmetry, oddness, and homogeneity on random points") {
  auto gen = oracle::rng(20260801);
  std::uniform_real_distribution<double> mag(-3.0, 3.0);
  std::uniform_real_distribution<double> al(0.05, 2.0);
  std::uniform_real_distribution<double> sc(0.1, 10.0);
  for (int t = 0; t < 10000; ++t) {
    const double alpha = al(gen);
    const double x = std::copysign(std::pow(10.0, mag(gen)), mag(gen));
    const double y = std::copysign(std::pow(10.0, mag(gen)), mag(gen));
    const double v = v_kernel(alpha, x, y);
    const double scale = std::fmax(std::fabs(v), 1e-300);
    CHECK(std::fabs(v_kernel(alpha, y, x) - v) / scale < 1e-12);
    CHECK(std::fabs(v_kernel(alpha, -x, y) + v) / scale < 1e-12);
    CHECK(std::fabs(v_kernel(alpha, x, -y) + v) / scale < 1e-12);
    const double c = sc(gen);
    CHECK(std::fabs(v_kernel(alpha, c * x, c * y) -
                    std::pow(c, alpha) * v) /
              std::fmax(std::pow(c, alpha) * std::fabs(v), 1e-300) <
          1e-12);
  }
}

TEST_CASE("geometric mean and linear bounds") {
  auto gen = oracle::rng(77);
  std::uniform_real_distribution<double> u(0.01, 5.0);
  std::uniform_real_distribution<double> al(0.05, 2.0);
  for (int t = 0; t < 10000; ++t) {
    const double alpha = al(gen);
    const double x = u(gen), y = u(gen);
    const double v = v_kernel(alpha, x, y);
    CHECK(std::fabs(v) <= std::pow(2.0, 0.5 * alpha - 1.0) *
                              std::pow(x * y, 0.5 * alpha) * (1 + 1e-12));
    if (alpha >= 1.0 || x >= y) {
      CHECK(std::fabs(v) <=
            std::pow(x, alpha - 1.0) * y * (1 + 1e-12));
    }
  }
}

TEST_CASE("overflow and underflow rescaling") {
  // Without rescaling x^2 + y^2 overflows to inf here.
  const double big = 1e200;
  const double v = v_kernel(1.5, big, big);
  CHECK(std::isfinite(v));
  CHECK(v == doctest::Approx(std::pow(2.0, -0.25) * std::pow(big, 1.5))
                 .epsilon(1e-12));
  const double tiny = 1e-200;
  const double w = v_kernel(0.5, tiny, tiny);
  CHECK(std::isfinite(w));
  CHECK(w ==
        doctest::Approx(std::pow(2.0, -0.75) * std::pow(tiny, 0.5))
            .epsilon(1e-12));
}

TEST_CASE("partial derivative matches complex-step oracle") {
  auto gen = oracle::rng(424242);
  std::uniform_real_distribution<double> u(0.05, 4.0);
  std::uniform_real_distribution<double> al(0.1, 2.0);
  for (int t = 0; t < 5000; ++t) {
    const double alpha = al(gen);
    const double x = u(gen), y = u(gen);
    const double got = v_kernel_dx(alpha, x, y);
    const double want = dx_complex_step(alpha, x, y);
    CHECK(oracle::rel_err(got, want) < 1e-10);
  }
}

TEST_CASE("monotone in first argument on the positive cone for alpha >= 1") {
  auto gen = oracle::rng(99);
  std::uniform_real_distribution<double> u(0.01, 5.0);
  std::uniform_real_distribution<double> al(1.0, 2.0);
  for (int t = 0; t < 2000; ++t) {
    CHECK(v_kernel_dx(al(gen), u(gen), u(gen)) >= 0.0);
  }
}

}  // TEST_SUITE
