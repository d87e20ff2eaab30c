// SPDX-License-Identifier: MIT
// Copyright (c) 2026 stablefield-cov contributors
#include "stablefield/exact_cov.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "stablefield/errors.hpp"
#include "stablefield/quadrature.hpp"
#include "stablefield/series.hpp"
#include "stablefield/vkernel.hpp"

namespace stablefield {

namespace {

// The two members of a covariance pair are the coefficients at
// (i,j) + (px,py) and (i,j) + (qx,qy); exactly one shift is nonzero per axis.
struct Shifts {
  long long px, py, qx, qy;
};

Shifts lag_shifts(long long k1, long long k2) {
  return {k1 < 0 ? -k1 : 0, k2 < 0 ? -k2 : 0, k1 > 0 ? k1 : 0,
          k2 > 0 ? k2 : 0};
}

// ===================== finite-support (override) paths =====================

using AtomMap = std::map<std::pair<long long, long long>, double>;

AtomMap atom_map(const FieldSpec& spec) {
  AtomMap m;
  for (const Atom& a : spec.override_atoms) m[{a.i, a.j}] = a.value;
  return m;
}

CovResult rho_override(const FieldSpec& spec, long long k1, long long k2) {
  const AtomMap atoms = atom_map(spec);
  double s = 0.0;
  for (const auto& [pos, cu] : atoms) {
    const auto it = atoms.find({pos.first + k1, pos.second + k2});
    if (it != atoms.end()) s += v_kernel(spec.alpha, cu, it->second);
  }
  CovResult out;
  out.value = s;
  out.error_bound = 1e-15 * std::fabs(s);
  out.tolerance_met = true;
  return out;
}

SpectralMasses masses_override(const FieldSpec& spec, long long k1,
                               long long k2) {
  const AtomMap atoms = atom_map(spec);
  const double a = spec.alpha;
  SpectralMasses out;
  for (const auto& [pos, cu] : atoms) {
    const auto it = atoms.find({pos.first + k1, pos.second + k2});
    const auto back = atoms.find({pos.first - k1, pos.second - k2});
    // Noise index hit by the base field only, or by both fields.
    if (it != atoms.end()) {
      const double x = cu, y = it->second;
      const double r2 = x * x + y * y;
      out.rho_value += v_kernel(a, x, y);
      out.mass_s1_sq += x * x * std::pow(r2, 0.5 * a - 1.0);
      out.total_mass += std::pow(r2, 0.5 * a);
    } else {
      out.mass_s1_sq += std::pow(std::fabs(cu), a);
      out.total_mass += std::pow(std::fabs(cu), a);
    }
    // Noise index hit by the lagged field; counted separately when the base
    // coefficient there vanishes.
    if (back != atoms.end()) {
      const double x = back->second, y = cu;
      const double r2 = x * x + y * y;
      out.mass_s2_sq += y * y * std::pow(r2, 0.5 * a - 1.0);
    } else {
      out.mass_s2_sq += std::pow(std::fabs(cu), a);
      out.total_mass += std::pow(std::fabs(cu), a);
    }
  }
  if (!(out.mass_s1_sq > 0.0) || !(out.mass_s2_sq > 0.0)) {
    throw DegenerateMarginalError(
        "a marginal spectral mass is zero; the normalized covariance is "
        "undefined for this override filter");
  }
  out.scc = std::clamp(
      out.rho_value / std::sqrt(out.mass_s1_sq * out.mass_s2_sq), -1.0, 1.0);
  out.mass_error = 1e-14 * out.total_mass;
  out.rho_error = 1e-15 * std::fabs(out.rho_value);
  out.tolerance_met = true;
  return out;
}

ChfExponent chf_override(const FieldSpec& spec, long long k1, long long k2,
                         double th1, double th2) {
  const AtomMap atoms = atom_map(spec);
  const double a = spec.alpha;
  double s = 0.0;
  for (const auto& [pos, cu] : atoms) {
    const auto fwd = atoms.find({pos.first + k1, pos.second + k2});
    const auto back = atoms.find({pos.first - k1, pos.second - k2});
    if (fwd != atoms.end()) {
      s += std::pow(std::fabs(th1 * cu + th2 * fwd->second), a);
    } else {
      s += std::pow(std::fabs(th1 * cu), a);
    }
    if (back == atoms.end()) {
      s += std::pow(std::fabs(th2 * cu), a);
    }
  }
  ChfExponent out;
  out.value = s;
  out.error_bound = 1e-14 * s;
  out.tolerance_met = true;
  return out;
}

// ===================== alpha-power lattice sums =====================

// sum_{i,j>=0} |c(i+s1, j+s2)|^alpha, exact up to ~1e-12 relative for every
// weight family (shifted zeta values, binomial expansion, finite patch).
double alpha_power_sum(const FieldSpec& spec, long long s1, long long s2) {
  const double a = spec.alpha;
  const double q1 = a * spec.beta1;
  const double q2 = a * spec.beta2;
  const WeightFamily& w = spec.weights;
  switch (w.kind) {
    case WeightKind::Constant:
      return std::pow(w.value, a) *
             hurwitz_zeta(q1, 1.0 + static_cast<double>(s1)) *
             hurwitz_zeta(q2, 1.0 + static_cast<double>(s2));
    case WeightKind::Rational:
      return binomial_weight_sum_2d(w.row_coef, w.col_coef, a, q1, q2, 1e-12,
                                    s1, s2)
          .value;
    case WeightKind::Table: {
      double s = hurwitz_zeta(q1, 1.0 + static_cast<double>(s1)) *
                 hurwitz_zeta(q2, 1.0 + static_cast<double>(s2));
      for (std::size_t u = 0; u < w.rows; ++u)
        for (std::size_t v = 0; v < w.cols; ++v) {
          const auto uu = static_cast<long long>(u);
          const auto vv = static_cast<long long>(v);
          if (uu < s1 || vv < s2) continue;
          const double wt = w.values[u * w.cols + v];
          s += (std::pow(std::fabs(wt), a) - 1.0) *
               std::pow(1.0 + static_cast<double>(u), -q1) *
               std::pow(1.0 + static_cast<double>(v), -q2);
        }
      return s;
    }
  }
  return 0.0;
}

// ===================== table reduction =====================

FieldSpec with_unit_weights(const FieldSpec& spec) {
  FieldSpec base = spec;
  base.weights = WeightFamily::constant(1.0);
  return base;
}

// Lattice positions whose pair touches the weight patch.
std::set<std::pair<long long, long long>> patch_influence(
    const FieldSpec& spec, const Shifts& sh) {
  std::set<std::pair<long long, long long>> infl;
  const WeightFamily& w = spec.weights;
  for (std::size_t u = 0; u < w.rows; ++u)
    for (std::size_t v = 0; v < w.cols; ++v) {
      const auto uu = static_cast<long long>(u);
      const auto vv = static_cast<long long>(v);
      if (uu - sh.px >= 0 && vv - sh.py >= 0)
        infl.insert({uu - sh.px, vv - sh.py});
      if (uu - sh.qx >= 0 && vv - sh.qy >= 0)
        infl.insert({uu - sh.qx, vv - sh.qy});
    }
  return infl;
}

// Exact difference between the table-weighted kernel sum and the unit-weight
// one; only finitely many pairs differ.
double table_pair_correction(const FieldSpec& spec, const Shifts& sh) {
  const FieldSpec base = with_unit_weights(spec);
  double corr = 0.0;
  for (const auto& [i, j] : patch_influence(spec, sh)) {
    const double id = static_cast<double>(i);
    const double jd = static_cast<double>(j);
    const double xa = coefficient(spec, id + sh.px, jd + sh.py);
    const double ya = coefficient(spec, id + sh.qx, jd + sh.qy);
    const double xb = coefficient(base, id + sh.px, jd + sh.py);
    const double yb = coefficient(base, id + sh.qx, jd + sh.qy);
    corr += v_kernel(spec.alpha, xa, ya) - v_kernel(spec.alpha, xb, yb);
  }
  return corr;
}

// ===================== Gaussian endpoint (alpha = 2) =====================

// With alpha = 2 the kernel is the plain product x*y and the double series
// factorises into one-dimensional sums of shifted power pairs.
struct SepComponent {
  double coef;
  int dpx, dqx;  // extra powers on the row factors (1+i+px), (1+i+qx)
  int dpy, dqy;  // extra powers on the column factors
};

double shifted_pair_sum(double sa, double sb, double qa, double qb,
                        const Quadrature& quad, double& err) {
  auto f = [=](double t) {
    return std::pow(1.0 + t + sa, -qa) * std::pow(1.0 + t + sb, -qb);
  };
  const SumResult s =
      sum_monotone_tail(f, 0, 0, qa + qb, 1e-10, /*convex=*/true, quad);
  err = s.error_bound;
  return s.value;
}

CovResult rho_gauss(const FieldSpec& spec, const Shifts& sh,
                    const CovOptions& opt) {
  (void)opt;
  const WeightFamily& w = spec.weights;
  if (w.kind == WeightKind::Table) {
    CovResult base = rho_gauss(with_unit_weights(spec), sh, opt);
    base.value += table_pair_correction(spec, sh);
    return base;
  }
  std::vector<SepComponent> comps;
  if (w.kind == WeightKind::Constant) {
    comps.push_back({w.value * w.value, 0, 0, 0, 0});
  } else {  // Rational: (1 + a/(1+i+px) + b/(1+j+py)) * (same with q shifts)
    const double a = w.row_coef, b = w.col_coef;
    const double cf[3] = {1.0, a, b};
    for (int u = 0; u < 3; ++u)
      for (int v = 0; v < 3; ++v) {
        SepComponent c{cf[u] * cf[v], 0, 0, 0, 0};
        if (u == 1) c.dpx = 1;
        if (u == 2) c.dpy = 1;
        if (v == 1) c.dqx = 1;
        if (v == 2) c.dqy = 1;
        if (c.coef != 0.0) comps.push_back(c);
      }
  }
  Quadrature quad(Quadrature::Options{1e-13, 0.0, 4000});
  const double spx = static_cast<double>(sh.px);
  const double sqx = static_cast<double>(sh.qx);
  const double spy = static_cast<double>(sh.py);
  const double sqy = static_cast<double>(sh.qy);
  double total = 0.0, err = 0.0;
  for (const SepComponent& c : comps) {
    double er = 0.0, ec = 0.0;
    const double sr = shifted_pair_sum(spx, sqx, spec.beta1 + c.dpx,
                                       spec.beta1 + c.dqx, quad, er);
    const double sc = shifted_pair_sum(spy, sqy, spec.beta2 + c.dpy,
                                       spec.beta2 + c.dqy, quad, ec);
    total += c.coef * sr * sc;
    err += std::fabs(c.coef) *
           (std::fabs(sr) * ec + std::fabs(sc) * er + er * ec);
  }
  CovResult out;
  out.value = total;
  out.error_bound = err;
  out.tolerance_met = true;
  return out;
}

// ===================== monotone sandwich (1 <= alpha < 2) =====================

CovResult rho_sandwich(const FieldSpec& spec, const Shifts& sh,
                       const CovOptions& opt) {
  const double a = spec.alpha;
  const double b1 = spec.beta1, b2 = spec.beta2;
  const long long jstar = spec.weights.monotone_start_col(b2);
  const long long istar = spec.weights.monotone_start_row(b1);
  const double inner_rel = opt.rel_tol / 8.0;
  Quadrature quad(Quadrature::Options{opt.rel_tol / 4.0, 0.0, 2000});

  auto term = [&](double t, double jd) {
    const double x = coefficient(spec, t + static_cast<double>(sh.px),
                                 jd + static_cast<double>(sh.py));
    const double y = coefficient(spec, t + static_cast<double>(sh.qx),
                                 jd + static_cast<double>(sh.qy));
    return v_kernel(a, x, y);
  };
  const double inner_q = b2 > 1.01 ? b2 : 0.5 * (1.0 + a * b2);
  bool rows_ok = true;
  auto row_sum = [&](double t) {
    const SumResult r = sum_monotone_tail(
        [&](double jd) { return term(t, jd); }, 0, jstar, inner_q, inner_rel,
        /*convex=*/false, quad, opt.max_terms_per_row);
    if (!r.converged) rows_ok = false;
    return r;
  };
  auto row_value = [&](double t) { return row_sum(t).value; };

  const double br1 = b1 * (a - 1.0);
  const double outer_q = br1 > 1.01 ? br1 : 0.5 * (1.0 + a * b1);

  long long I = std::max<long long>(8, istar + 1);
  double prefix = 0.0, prefix_err = 0.0;
  long long rows = 0;
  for (long long i = 0; i < I; ++i) {
    const SumResult r = row_sum(static_cast<double>(i));
    prefix += r.value;
    prefix_err += r.error_bound;
    ++rows;
  }
  CovResult out;
  while (true) {
    const double Id = static_cast<double>(I);
    const QuadResult tail = quad.upper_tail(row_value, Id, outer_q);
    const QuadResult bridge = quad.finite(row_value, Id - 1.0, Id);
    const double est = tail.value + 0.5 * bridge.value;
    const double hw = 0.5 * std::fabs(bridge.value) + tail.error_bound +
                      bridge.error_bound +
                      inner_rel * (std::fabs(tail.value) + std::fabs(bridge.value));
    out.value = prefix + est;
    out.error_bound = prefix_err + hw;
    out.rows_used = rows;
    if (out.error_bound <=
        opt.rel_tol * std::max(std::fabs(out.value), 1e-300)) {
      out.tolerance_met = rows_ok;
      return out;
    }
    if (rows + I > opt.max_rows) {
      out.tolerance_met = false;
      return out;
    }
    for (long long i = I; i < 2 * I; ++i) {
      const SumResult r = row_sum(static_cast<double>(i));
      prefix += r.value;
      prefix_err += r.error_bound;
      ++rows;
    }
    I *= 2;
  }
}

// ===================== expanding box (alpha < 1) =====================

CovResult rho_box(const FieldSpec& spec, const Shifts& sh,
                  const CovOptions& opt) {
  const double a = spec.alpha;
  const double whi = spec.weights.bounds().second;
  const double fac = std::pow(2.0, 0.5 * a - 1.0) * std::pow(whi, a);
  Quadrature quad(Quadrature::Options{1e-8, 0.0, 2000});
  const double hb1 = 0.5 * a * spec.beta1;
  const double hb2 = 0.5 * a * spec.beta2;
  auto g1 = [&](double t) {
    return std::pow(1.0 + t + static_cast<double>(sh.px), -hb1) *
           std::pow(1.0 + t + static_cast<double>(sh.qx), -hb1);
  };
  auto g2 = [&](double t) {
    return std::pow(1.0 + t + static_cast<double>(sh.py), -hb2) *
           std::pow(1.0 + t + static_cast<double>(sh.qy), -hb2);
  };
  const SumResult G1 = sum_monotone_tail(g1, 0, 0, 2.0 * hb1, 1e-8, true, quad);
  const SumResult G2 = sum_monotone_tail(g2, 0, 0, 2.0 * hb2, 1e-8, true, quad);
  const double G1u = G1.value + G1.error_bound;
  const double G2u = G2.value + G2.error_bound;
  auto tail_upper = [&](const std::function<double(double)>& g, long long K,
                        double q) {
    const QuadResult r = quad.upper_tail(g, static_cast<double>(K) - 1.0, q);
    return r.value + r.error_bound;  // >= sum_{i>=K} g(i) by monotonicity
  };
  long long I = 32, J = 32;
  CovResult out;
  while (true) {
    double box = 0.0;
    for (long long i = 0; i < I; ++i) {
      const double id = static_cast<double>(i);
      for (long long j = 0; j < J; ++j) {
        const double jd = static_cast<double>(j);
        const double x = coefficient(spec, id + static_cast<double>(sh.px),
                                     jd + static_cast<double>(sh.py));
        const double y = coefficient(spec, id + static_cast<double>(sh.qx),
                                     jd + static_cast<double>(sh.qy));
        box += v_kernel(a, x, y);
      }
    }
    const double t1 = tail_upper(g1, I, 2.0 * hb1);
    const double t2 = tail_upper(g2, J, 2.0 * hb2);
    const double tail_bound = fac * (t1 * G2u + G1u * t2);
    out.value = box;
    out.error_bound = tail_bound;
    out.rows_used = I;
    if (tail_bound <= opt.rel_tol * std::max(std::fabs(box), 1e-300)) {
      out.tolerance_met = true;
      return out;
    }
    if (4 * I * J > opt.max_box_terms) {
      out.tolerance_met = false;
      return out;
    }
    I *= 2;
    J *= 2;
  }
}

CovResult rho_impl(const FieldSpec& spec, long long k1, long long k2,
                   const CovOptions& opt) {
  const Shifts sh = lag_shifts(k1, k2);
  if (k1 == 0 && k2 == 0) {
    // Every pair is (c, c), so the sum collapses to the alpha-power mass.
    CovResult out;
    out.value = std::pow(2.0, 0.5 * spec.alpha - 1.0) *
                alpha_power_sum(spec, 0, 0);
    out.error_bound = 1e-12 * std::fabs(out.value);
    out.tolerance_met = true;
    return out;
  }
  if (spec.alpha == 2.0) return rho_gauss(spec, sh, opt);
  if (spec.weights.kind == WeightKind::Table) {
    CovResult base = rho_impl(with_unit_weights(spec), k1, k2, opt);
    base.value += table_pair_correction(spec, sh);
    return base;
  }
  if (spec.alpha >= 1.0) return rho_sandwich(spec, sh, opt);
  return rho_box(spec, sh, opt);
}

}  // namespace

CovResult rho(const FieldSpec& spec, long long k1, long long k2,
              const CovOptions& opt) {
  validate(spec);
  if (spec.has_override()) return rho_override(spec, k1, k2);
  return rho_impl(spec, k1, k2, opt);
}

double alpha_mass(const FieldSpec& spec, double rel_tol) {
  validate(spec);
  (void)rel_tol;
  if (spec.has_override()) {
    double s = 0.0;
    for (const Atom& at : spec.override_atoms)
      s += std::pow(std::fabs(at.value), spec.alpha);
    return s;
  }
  return alpha_power_sum(spec, 0, 0);
}

double alpha_mass_shifted(const FieldSpec& spec, long long s1, long long s2) {
  validate(spec);
  if (s1 < 0 || s2 < 0) {
    throw InvalidParameterError("alpha_mass_shifted needs s1, s2 >= 0");
  }
  if (spec.has_override()) {
    double s = 0.0;
    for (const Atom& at : spec.override_atoms) {
      if (at.i >= s1 && at.j >= s2)
        s += std::pow(std::fabs(at.value), spec.alpha);
    }
    return s;
  }
  return alpha_power_sum(spec, s1, s2);
}

SpectralMasses spectral_masses(const FieldSpec& spec, long long k1,
                               long long k2, const CovOptions& opt) {
  validate(spec);
  if (spec.has_override()) return masses_override(spec, k1, k2);
  const Shifts sh = lag_shifts(k1, k2);
  const double a = spec.alpha;
  const double A = alpha_power_sum(spec, 0, 0);
  if (k1 == 0 && k2 == 0) {
    // Zero lag: both fields are the same series, so every pair is (c, c).
    SpectralMasses out;
    out.rho_value = std::pow(2.0, 0.5 * a - 1.0) * A;
    out.mass_s1_sq = out.rho_value;
    out.mass_s2_sq = out.rho_value;
    out.total_mass = std::pow(2.0, 0.5 * a) * A;
    out.scc = 1.0;
    out.rho_error = 1e-12 * out.rho_value;
    out.mass_error = 1e-12 * out.total_mass;
    out.tolerance_met = true;
    return out;
  }
  const double Ap = alpha_power_sum(spec, sh.px, sh.py);
  const double Aq = alpha_power_sum(spec, sh.qx, sh.qy);
  const double edge1 = std::max(0.0, A - Ap);
  const double edge2 = std::max(0.0, A - Aq);

  SpectralMasses out;
  const CovResult r = rho_impl(spec, k1, k2, opt);
  out.rho_value = r.value;
  out.rho_error = r.error_bound;

  double S1 = 0.0, S2 = 0.0, S0 = 0.0, comp_err = 0.0;
  bool met = true;
  if (a == 2.0) {
    S1 = Ap;
    S2 = Aq;
    S0 = Ap + Aq;
    comp_err = 1e-12 * S0;
  } else {
    long long I = 32, J = 32;
    while (true) {
      S1 = S2 = S0 = 0.0;
      double powX = 0.0, powY = 0.0;
      for (long long i = 0; i < I; ++i) {
        const double id = static_cast<double>(i);
        for (long long j = 0; j < J; ++j) {
          const double jd = static_cast<double>(j);
          const double x = coefficient(spec, id + static_cast<double>(sh.px),
                                       jd + static_cast<double>(sh.py));
          const double y = coefficient(spec, id + static_cast<double>(sh.qx),
                                       jd + static_cast<double>(sh.qy));
          const double r2 = x * x + y * y;
          const double core = std::pow(r2, 0.5 * a - 1.0);
          S1 += x * x * core;
          S2 += y * y * core;
          S0 += std::pow(r2, 0.5 * a);
          powX += std::pow(std::fabs(x), a);
          powY += std::pow(std::fabs(y), a);
        }
      }
      // Complement certificates: the missing s1^2 mass lies in [0, compX]
      // (each term x^2 (x^2+y^2)^{a/2-1} <= |x|^a), likewise for s2^2; the
      // missing total mass lies in [C/2, C] with C = compX + compY because
      // max(|x|,|y|)^a <= (x^2+y^2)^{a/2} <= |x|^a + |y|^a for a <= 2.
      const double compX = std::max(0.0, Ap - powX);
      const double compY = std::max(0.0, Aq - powY);
      const double C = compX + compY;
      S1 += 0.5 * compX;
      S2 += 0.5 * compY;
      S0 += 0.75 * C;
      comp_err = 0.5 * compX + 0.5 * compY + 0.25 * C;
      const double scale = std::max(S0 + edge1 + edge2, 1e-300);
      if (comp_err <= opt.rel_tol * scale) break;
      if (4 * I * J > opt.max_box_terms) {
        met = false;
        break;
      }
      I *= 2;
      J *= 2;
    }
  }
  out.mass_s1_sq = edge1 + S1;
  out.mass_s2_sq = edge2 + S2;
  out.total_mass = edge1 + edge2 + S0;
  out.mass_error = comp_err + 1e-12 * out.total_mass;
  out.scc = std::clamp(
      out.rho_value / std::sqrt(out.mass_s1_sq * out.mass_s2_sq), -1.0, 1.0);
  out.tolerance_met = met && r.tolerance_met;
  return out;
}

ChfExponent chf_exponent(const FieldSpec& spec, long long k1, long long k2,
                         double th1, double th2, double rel_tol) {
  validate(spec);
  if (spec.has_override()) return chf_override(spec, k1, k2, th1, th2);
  const Shifts sh = lag_shifts(k1, k2);
  const double a = spec.alpha;
  const double A = alpha_power_sum(spec, 0, 0);
  const double Ap = alpha_power_sum(spec, sh.px, sh.py);
  const double Aq = alpha_power_sum(spec, sh.qx, sh.qy);
  const double edge = std::pow(std::fabs(th1), a) * std::max(0.0, A - Ap) +
                      std::pow(std::fabs(th2), a) * std::max(0.0, A - Aq);
  const double fac = a >= 1.0 ? std::pow(2.0, a - 1.0) : 1.0;
  ChfExponent out;
  if (th1 == 0.0 || th2 == 0.0) {
    // A single direction sees one field alone: its exponent is the plain
    // alpha-power mass of the filter, scaled by the direction.
    const double th = th1 == 0.0 ? th2 : th1;
    out.value = std::pow(std::fabs(th), a) * A;
    out.error_bound = 1e-12 * out.value;
    out.tolerance_met = true;
    return out;
  }
  long long I = 32, J = 32;
  while (true) {
    double box = 0.0, powX = 0.0, powY = 0.0;
    for (long long i = 0; i < I; ++i) {
      const double id = static_cast<double>(i);
      for (long long j = 0; j < J; ++j) {
        const double jd = static_cast<double>(j);
        const double x = coefficient(spec, id + static_cast<double>(sh.px),
                                     jd + static_cast<double>(sh.py));
        const double y = coefficient(spec, id + static_cast<double>(sh.qx),
                                     jd + static_cast<double>(sh.qy));
        box += std::pow(std::fabs(th1 * x + th2 * y), a);
        powX += std::pow(std::fabs(x), a);
        powY += std::pow(std::fabs(y), a);
      }
    }
    const double compX = std::max(0.0, Ap - powX);
    const double compY = std::max(0.0, Aq - powY);
    const double tail = fac * (std::pow(std::fabs(th1), a) * compX +
                               std::pow(std::fabs(th2), a) * compY);
    out.value = box + edge;
    out.error_bound = tail + 1e-12 * out.value;
    if (out.error_bound <= rel_tol * std::max(out.value, 1e-300)) {
      out.tolerance_met = true;
      return out;
    }
    if (4 * I * J > 50000000) {
      out.tolerance_met = false;
      return out;
    }
    I *= 2;
    J *= 2;
  }
}

}  // namespace stablefield
