// SPDX-License-Identifier: MIT
// Copyright (c) 2026 stablefield-cov contributors
#include "stablefield/series.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "stablefield/errors.hpp"

namespace stablefield {

double hurwitz_zeta(double q, double x) {
  if (!(q > 1.0))
    throw NonIntegrableError("hurwitz_zeta requires exponent q > 1");
  if (!(x > 0.0)) throw InvalidParameterError("hurwitz_zeta requires x > 0");
  // Explicit prefix until the Euler-Maclaurin remainder is negligible.
  const double x_break = std::max(30.0, 12.0 * q);
  double s = 0.0;
  double t = x;
  while (t < x_break) {
    s += std::pow(t, -q);
    t += 1.0;
  }
  const double inv = 1.0 / t;
  const double tq = std::pow(t, -q);
  s += t * tq / (q - 1.0);          // integral term t^{1-q}/(q-1)
  s += 0.5 * tq;                    // half of the boundary term
  const double q1 = q * (q + 1.0);
  s += q * tq * inv / 12.0;         // first Bernoulli correction
  s -= q1 * (q + 2.0) * tq * inv * inv * inv / 720.0;
  s += q1 * (q + 2.0) * (q + 3.0) * (q + 4.0) * tq * std::pow(inv, 5.0) /
       30240.0;
  return s;
}

namespace {

// Geometric bound for the binomial coefficient ratio beyond index k:
// |C(p,k+1)/C(p,k)| * r <= r * (k + |p|) / (k + 1).
double binom_tail_ratio(double p, long long k, double r) {
  return r * (static_cast<double>(k) + std::fabs(p)) /
         (static_cast<double>(k) + 1.0);
}

}  // namespace

SumResult binomial_weight_sum(double a, double p, double q, double rel_tol,
                              long long shift) {
  if (!(q > 1.0))
    throw NonIntegrableError("binomial_weight_sum requires q > 1");
  if (!(std::fabs(a) < 1.0))
    throw InvalidParameterError("binomial_weight_sum requires |a| < 1");
  const double x0 = 1.0 + static_cast<double>(shift);
  SumResult out;
  if (a == 0.0 || p == 0.0) {
    out.value = hurwitz_zeta(q, x0);
    out.error_bound = 1e-13 * std::fabs(out.value);
    out.terms = 1;
    out.converged = true;
    return out;
  }
  const double zq = hurwitz_zeta(q, x0);
  double coef = 1.0;  // C(p, k) a^k
  double sum = 0.0;
  const long long kmax = 400;
  for (long long k = 0; k <= kmax; ++k) {
    if (k > 0) coef *= (p - static_cast<double>(k - 1)) / static_cast<double>(k) * a;
    if (coef == 0.0) {  // integer p exhausts the expansion exactly
      out.value = sum;
      out.error_bound = 1e-14 * std::fabs(sum);
      out.terms = k;
      out.converged = true;
      return out;
    }
    sum += coef * hurwitz_zeta(q + static_cast<double>(k), x0);
    const double ratio = binom_tail_ratio(p, k, std::fabs(a));
    if (ratio < 1.0) {
      // Remaining terms are dominated by a geometric series times zeta(q).
      const double tail = std::fabs(coef) * zq * ratio / (1.0 - ratio);
      if (tail <= rel_tol * std::max(std::fabs(sum), 1e-300)) {
        out.value = sum;
        out.error_bound = tail;
        out.terms = k + 1;
        out.converged = true;
        return out;
      }
    }
  }
  out.value = sum;
  out.error_bound = std::fabs(sum);  // no certificate reached
  out.terms = kmax;
  out.converged = false;
  return out;
}

SumResult binomial_weight_sum_2d(double a, double b, double p, double q1,
                                 double q2, double rel_tol, long long s1,
                                 long long s2) {
  if (!(q1 > 1.0) || !(q2 > 1.0))
    throw NonIntegrableError("binomial_weight_sum_2d requires q1, q2 > 1");
  const double r = std::fabs(a) + std::fabs(b);
  if (!(r < 1.0))
    throw InvalidParameterError(
        "binomial_weight_sum_2d requires |a| + |b| < 1");
  const double x1 = 1.0 + static_cast<double>(s1);
  const double x2 = 1.0 + static_cast<double>(s2);
  const long long kmax = 400;
  // Cache shifted zeta values for both axes.
  std::vector<double> z1{hurwitz_zeta(q1, x1)}, z2{hurwitz_zeta(q2, x2)};
  auto zeta1 = [&](long long l) {
    while (static_cast<long long>(z1.size()) <= l)
      z1.push_back(hurwitz_zeta(q1 + static_cast<double>(z1.size()), x1));
    return z1[static_cast<std::size_t>(l)];
  };
  auto zeta2 = [&](long long l) {
    while (static_cast<long long>(z2.size()) <= l)
      z2.push_back(hurwitz_zeta(q2 + static_cast<double>(z2.size()), x2));
    return z2[static_cast<std::size_t>(l)];
  };
  SumResult out;
  double sum = 0.0;
  double cp = 1.0;  // C(p, k)
  const double zbound = z1[0] * z2[0];
  for (long long k = 0; k <= kmax; ++k) {
    if (k > 0) cp *= (p - static_cast<double>(k - 1)) / static_cast<double>(k);
    if (cp == 0.0) {
      out.value = sum;
      out.error_bound = 1e-14 * std::fabs(sum);
      out.terms = k;
      out.converged = true;
      return out;
    }
    // (u + v)^k expanded over the two axes.
    double inner = 0.0;
    double cl = 1.0;  // C(k, l) a^l b^{k-l} built up incrementally
    for (long long l = 0; l <= k; ++l) {
      const double term = cl * std::pow(a, static_cast<double>(l)) *
                          std::pow(b, static_cast<double>(k - l));
      if (term != 0.0) inner += term * zeta1(l) * zeta2(k - l);
      cl *= static_cast<double>(k - l) / static_cast<double>(l + 1);
    }
    sum += cp * inner;
    const double ratio = binom_tail_ratio(p, k, r);
    if (ratio < 1.0) {
      // |C(p,k') inner_{k'}| <= |C(p,k')| r^{k'} zeta(q1) zeta(q2), and the
      // k-indexed magnitudes shrink geometrically from here on.
      const double rk = std::pow(r, static_cast<double>(k));
      const double tail = std::fabs(cp) * rk * zbound * ratio / (1.0 - ratio);
      if (tail <= rel_tol * std::max(std::fabs(sum), 1e-300)) {
        out.value = sum;
        out.error_bound = tail;
        out.terms = k + 1;
        out.converged = true;
        return out;
      }
    }
  }
  out.value = sum;
  out.error_bound = std::fabs(sum);
  out.terms = kmax;
  out.converged = false;
  return out;
}

SumResult sum_monotone_tail(const std::function<double(double)>& f,
                            long long start, long long mono_from,
                            double tail_exponent, double rel_tol, bool convex,
                            const Quadrature& quad, long long max_terms) {
  SumResult out;
  // The brackets integrate from K-1 (or K-1/2), so monotonicity must already
  // hold one index before the tail start.
  long long K = std::max(start + 8, mono_from + 1);
  double prefix = 0.0;
  for (long long i = start; i < K; ++i) {
    prefix += f(static_cast<double>(i));
    ++out.terms;
  }
  while (true) {
    const double Kd = static_cast<double>(K);
    const double fK = f(Kd);
    const QuadResult tail_int = quad.upper_tail(f, Kd, tail_exponent);
    double lower, upper, bridge_err;
    if (convex) {
      const QuadResult bridge = quad.finite(f, Kd - 0.5, Kd);
      lower = tail_int.value + 0.5 * fK;
      upper = tail_int.value + bridge.value;
      bridge_err = bridge.error_bound;
    } else {
      const QuadResult bridge = quad.finite(f, Kd - 1.0, Kd);
      lower = tail_int.value;
      upper = tail_int.value + bridge.value;
      bridge_err = bridge.error_bound;
    }
    if (upper < lower) std::swap(upper, lower);  // quadrature noise guard
    const double est = 0.5 * (lower + upper);
    const double hw =
        0.5 * (upper - lower) + tail_int.error_bound + bridge_err;
    const double total = prefix + est;
    out.value = total;
    out.error_bound = hw;
    if (hw <= rel_tol * std::max(std::fabs(total), 1e-300)) {
      out.converged = true;
      return out;
    }
    if (out.terms + K > max_terms) {
      out.converged = false;
      return out;
    }
    for (long long i = K; i < 2 * K; ++i) {
      prefix += f(static_cast<double>(i));
      ++out.terms;
    }
    K *= 2;
  }
}

SumResult sum_with_majorant(
    const std::function<double(long long)>& f, long long start,
    const std::function<double(long long)>& tail_majorant, double rel_tol,
    long long max_terms) {
  SumResult out;
  double acc = 0.0;
  long long i = start;
  long long next_check = start + 16;
  while (out.terms < max_terms) {
    acc += f(i);
    ++i;
    ++out.terms;
    if (i >= next_check) {
      const double bound = tail_majorant(i);
      out.value = acc;
      out.error_bound = bound;
      if (bound <= rel_tol * std::max(std::fabs(acc), 1e-300)) {
        out.converged = true;
        return out;
      }
      next_check = i + std::max<long long>(16, i - start);
    }
  }
  out.value = acc;
  out.error_bound = tail_majorant(i);
  out.converged =
      out.error_bound <= rel_tol * std::max(std::fabs(acc), 1e-300);
  return out;
}

}  // namespace stablefield
