// SPDX-License-Identifier: MIT
// Copyright (c) 2026 stablefield-cov contributors

#include "stablefield/sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <utility>

#include "stablefield/errors.hpp"
#include "stablefield/exact_cov.hpp"
#include "stablefield/series.hpp"

namespace stablefield {

namespace {

inline std::uint64_t sm_mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

double standard_stable(double alpha, double u, double w) {
  if (!(alpha > 0.0 && alpha <= 2.0)) {
    throw InvalidParameterError("standard_stable needs alpha in (0, 2]");
  }
  if (alpha == 1.0) return std::tan(u);
  const double su = std::sin(alpha * u);
  const double cu = std::cos(u);
  const double ct = std::cos((alpha - 1.0) * u);
  return su / std::pow(cu, 1.0 / alpha) *
         std::pow(ct / w, (1.0 - alpha) / alpha);
}

std::vector<double> sample_sas(double alpha, double scale, std::uint64_t seed,
                               std::size_t count) {
  if (!(scale > 0.0)) {
    throw InvalidParameterError("sample_sas needs scale > 0");
  }
  std::vector<double> out(count);
  double u = 0.0, w = 0.0;
  for (std::size_t s = 0; s < count; ++s) {
    KeyedRng::for_sample(seed, s).draw(0, u, w);
    out[s] = scale * standard_stable(alpha, u, w);
  }
  return out;
}

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw InvalidParameterError("normal_quantile needs p in (0, 1)");
  }
  // Acklam's rational approximation, then one Halley refinement through the
  // machine-accurate erfc.
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double pl = 0.02425;
  double x;
  if (p < pl) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - pl) {
    const double q = p - 0.5, r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) *
        q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log1p(-p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q +
          c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double err = 0.5 * std::erfc(-x / std::sqrt(2.0)) - p;
  const double u = err * std::sqrt(2.0 * M_PI) * std::exp(0.5 * x * x);
  return x - u / (1.0 + 0.5 * x * u);
}

KeyedRng KeyedRng::for_sample(std::uint64_t seed, std::uint64_t sample) {
  KeyedRng r;
  r.key = sm_mix(sm_mix(seed) ^ (0x9e3779b97f4a7c15ULL * (sample + 1)));
  return r;
}

void KeyedRng::draw(std::uint64_t t, double& u, double& w) const {
  const std::uint64_t h =
      sm_mix(key ^ (t * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL));
  const std::uint64_t h2 = sm_mix(h ^ 0x6a09e667f3bcc909ULL);
  const double inv = 0x1.0p-53;
  const double u01 = (static_cast<double>(h >> 11) + 0.5) * inv;
  const double e01 = (static_cast<double>(h2 >> 11) + 0.5) * inv;
  u = M_PI * (u01 - 0.5);
  w = -std::log(e01);
}

namespace {

struct Cell {
  double cx = 0.0, cy = 0.0;
};

// One stable draw per cell; exact one-sided edge masses and the shared tails
// collapsed onto their limiting directions when requested.
struct CellPlan {
  std::vector<Cell> cells;
  double direction_bias_mass = 0.0;
  double truncated_mass = 0.0;
};

CellPlan plan_override(const FieldSpec& spec, long long px, long long py,
                       long long qx, long long qy) {
  CellPlan plan;
  std::map<std::pair<long long, long long>, Cell> grid;
  for (const Atom& at : spec.override_atoms) {
    grid[{at.i - px, at.j - py}].cx = at.value;
    grid[{at.i - qx, at.j - qy}].cy = at.value;
  }
  plan.cells.reserve(grid.size());
  for (const auto& [idx, cell] : grid) plan.cells.push_back(cell);
  return plan;
}

CellPlan plan_lattice(const FieldSpec& spec, long long px, long long py,
                      long long qx, long long qy, const SimOptions& opt) {
  const double a = spec.alpha;
  long long B = std::max<long long>(opt.box, 4);
  // Keep any finite weight patch strictly inside the box so the collapsed
  // tails see limit weights only.
  if (spec.weights.kind == WeightKind::Table) {
    B = std::max({B, static_cast<long long>(spec.weights.rows) + 2,
                  static_cast<long long>(spec.weights.cols) + 2});
  }

  CellPlan plan;
  plan.cells.reserve(static_cast<std::size_t>(B) * B + 2 * B + 3);
  double box_x = 0.0, box_y = 0.0;  // alpha-power mass captured by the box
  for (long long i = 0; i < B; ++i) {
    for (long long j = 0; j < B; ++j) {
      Cell cell;
      cell.cx = coefficient(spec, static_cast<double>(i + px),
                            static_cast<double>(j + py));
      cell.cy = coefficient(spec, static_cast<double>(i + qx),
                            static_cast<double>(j + qy));
      box_x += std::pow(std::fabs(cell.cx), a);
      box_y += std::pow(std::fabs(cell.cy), a);
      plan.cells.push_back(cell);
    }
  }

  const double A = alpha_mass(spec);
  // One-sided edges: rows/columns seen by only one of the two fields.
  // Collapsing each onto a single draw is exact in distribution, so both
  // truncation modes keep them.
  const double ex = std::max(0.0, A - alpha_mass_shifted(spec, px, py));
  const double ey = std::max(0.0, A - alpha_mass_shifted(spec, qx, qy));
  if (!opt.collapse_tails) {
    if (ex > 0.0) plan.cells.push_back({std::pow(ex, 1.0 / a), 0.0});
    if (ey > 0.0) plan.cells.push_back({0.0, std::pow(ey, 1.0 / a)});
    plan.truncated_mass = std::max(0.0, A - ex - box_x) +
                          std::max(0.0, A - ey - box_y);
    if (plan.truncated_mass > opt.sim_tol) {
      char buf[160];
      std::snprintf(buf, sizeof(buf),
                    "plain truncation at box %lld discards alpha-mass %.3g > "
                    "sim_tol %.3g; enlarge the box or enable tail collapse",
                    B, plan.truncated_mass, opt.sim_tol);
      throw TruncationTooCoarseError(buf);
    }
    return plan;
  }

  Quadrature quad;
  const WeightFamily& w = spec.weights;
  const long long mrow = std::max(B, w.monotone_start_row(spec.beta1));
  const long long mcol = std::max(B, w.monotone_start_col(spec.beta2));
  const double qrow = a * spec.beta1;
  const double qcol = a * spec.beta2;

  auto pow_a = [a](double v) { return std::pow(std::fabs(v), a); };
  auto row_tail = [&](long long ox, long long oy, double j) {
    // sum_{i>=B} |c(i+ox, j+oy)|^alpha for a fixed (possibly real) column j.
    auto f = [&](double t) {
      return pow_a(coefficient(spec, t + static_cast<double>(ox),
                               j + static_cast<double>(oy)));
    };
    return sum_monotone_tail(f, B, mrow, qrow, 1e-9, false, quad).value;
  };
  auto col_tail = [&](long long ox, long long oy, double i) {
    auto f = [&](double t) {
      return pow_a(coefficient(spec, i + static_cast<double>(ox),
                               t + static_cast<double>(oy)));
    };
    return sum_monotone_tail(f, B, mcol, qcol, 1e-9, false, quad).value;
  };
  auto spread_of = [](double ratio_near, double ratio_limit) {
    if (!(ratio_limit > 0.0)) return 1.0;
    return std::clamp(std::fabs(ratio_near / ratio_limit - 1.0), 0.0, 1.0);
  };

  // Right strips: i >= B, one column j at a time.  Marginal scales are the
  // exact alpha-mass tails; the joint direction is the i -> infinity limit.
  for (long long j = 0; j < B; ++j) {
    const double ux = row_tail(px, py, static_cast<double>(j));
    const double vy = row_tail(qx, qy, static_cast<double>(j));
    if (ux <= 0.0 && vy <= 0.0) continue;
    const double xb = coefficient(spec, static_cast<double>(B + px),
                                  static_cast<double>(j + py));
    const double yb = coefficient(spec, static_cast<double>(B + qx),
                                  static_cast<double>(j + qy));
    const double lim_x =
        w.col_limit(static_cast<double>(j + py)) *
        std::pow(1.0 + static_cast<double>(j + py), -spec.beta2);
    const double lim_y =
        w.col_limit(static_cast<double>(j + qy)) *
        std::pow(1.0 + static_cast<double>(j + qy), -spec.beta2);
    const double spread =
        spread_of(yb > 0.0 ? xb / yb : 0.0, lim_y > 0.0 ? lim_x / lim_y : 0.0);
    plan.cells.push_back({std::pow(ux, 1.0 / a), std::pow(vy, 1.0 / a)});
    plan.direction_bias_mass += (ux + vy) * spread;
  }
  // Bottom strips: j >= B, one row i at a time.
  for (long long i = 0; i < B; ++i) {
    const double ux = col_tail(px, py, static_cast<double>(i));
    const double vy = col_tail(qx, qy, static_cast<double>(i));
    if (ux <= 0.0 && vy <= 0.0) continue;
    const double xb = coefficient(spec, static_cast<double>(i + px),
                                  static_cast<double>(B + py));
    const double yb = coefficient(spec, static_cast<double>(i + qx),
                                  static_cast<double>(B + qy));
    const double lim_x =
        w.row_limit(static_cast<double>(i + px)) *
        std::pow(1.0 + static_cast<double>(i + px), -spec.beta1);
    const double lim_y =
        w.row_limit(static_cast<double>(i + qx)) *
        std::pow(1.0 + static_cast<double>(i + qx), -spec.beta1);
    const double spread =
        spread_of(yb > 0.0 ? xb / yb : 0.0, lim_y > 0.0 ? lim_x / lim_y : 0.0);
    plan.cells.push_back({std::pow(ux, 1.0 / a), std::pow(vy, 1.0 / a)});
    plan.direction_bias_mass += (ux + vy) * spread;
  }
  // Corner: both indices >= B; its direction limit is the diagonal.
  {
    auto outer_x = [&](double j) { return row_tail(px, py, j); };
    auto outer_y = [&](double j) { return row_tail(qx, qy, j); };
    const double ux =
        sum_monotone_tail(outer_x, B, mcol, qcol, 1e-8, false, quad).value;
    const double vy =
        sum_monotone_tail(outer_y, B, mcol, qcol, 1e-8, false, quad).value;
    if (ux > 0.0 || vy > 0.0) {
      const double xb = coefficient(spec, static_cast<double>(B + px),
                                    static_cast<double>(B + py));
      const double yb = coefficient(spec, static_cast<double>(B + qx),
                                    static_cast<double>(B + qy));
      const double spread = spread_of(yb > 0.0 ? xb / yb : 0.0, 1.0);
      plan.cells.push_back({std::pow(ux, 1.0 / a), std::pow(vy, 1.0 / a)});
      plan.direction_bias_mass += (ux + vy) * std::max(spread, 0.5);
    }
  }
  // One-sided edges: rows/columns seen by only one of the two fields.
  // Collapsing each onto a single draw is exact in distribution.
  const double ex = std::max(0.0, A - alpha_mass_shifted(spec, px, py));
  const double ey = std::max(0.0, A - alpha_mass_shifted(spec, qx, qy));
  if (ex > 0.0) plan.cells.push_back({std::pow(ex, 1.0 / a), 0.0});
  if (ey > 0.0) plan.cells.push_back({0.0, std::pow(ey, 1.0 / a)});
  return plan;
}

}  // namespace

PairSample simulate_pairs(const FieldSpec& spec, long long k1, long long k2,
                          std::size_t n, const SimOptions& opt) {
  validate(spec);
  const long long px = k1 < 0 ? -k1 : 0, py = k2 < 0 ? -k2 : 0;
  const long long qx = k1 > 0 ? k1 : 0, qy = k2 > 0 ? k2 : 0;

  const CellPlan plan =
      spec.has_override() ? plan_override(spec, px, py, qx, qy)
                          : plan_lattice(spec, px, py, qx, qy, opt);

  PairSample out;
  out.direction_bias_mass = plan.direction_bias_mass;
  out.truncated_mass = plan.truncated_mass;
  out.x0.resize(n);
  out.xk.resize(n);
  const double alpha = spec.alpha;
  for (std::size_t s = 0; s < n; ++s) {
    const KeyedRng rng = KeyedRng::for_sample(opt.seed, s);
    double a0 = 0.0, ak = 0.0;
    double u = 0.0, w = 0.0;
    for (std::size_t t = 0; t < plan.cells.size(); ++t) {
      const Cell& cell = plan.cells[t];
      if (cell.cx == 0.0 && cell.cy == 0.0) continue;
      rng.draw(t, u, w);
      const double xi = standard_stable(alpha, u, w);
      a0 += cell.cx * xi;
      ak += cell.cy * xi;
    }
    out.x0[s] = a0;
    out.xk[s] = ak;
  }
  return out;
}

std::string EcfReport::summary() const {
  std::ostringstream os;
  std::size_t failed = 0;
  for (const auto& r : rows)
    if (!r.pass) ++failed;
  os << "ecf check: " << rows.size() << " statistics, N=" << samples
     << ", simultaneous z=" << z << ": ";
  if (failed == 0) {
    os << "all within bands";
  } else {
    os << failed << " outside bands:";
    char buf[160];
    for (const auto& r : rows) {
      if (r.pass) continue;
      std::snprintf(buf, sizeof(buf),
                    " [%c at theta=(%.3g,%.3g): measured %.5f vs expected "
                    "%.5f, band %.5f]",
                    r.part, r.theta1, r.theta2, r.measured, r.expected,
                    r.band);
      os << buf;
    }
  }
  return os.str();
}

std::vector<std::array<double, 2>> default_theta_grid() {
  static const double mags[] = {0.4, 0.8, 1.4};
  static const double dirs[][2] = {
      {1.0, 0.0}, {0.0, 1.0}, {M_SQRT1_2, M_SQRT1_2}, {M_SQRT1_2, -M_SQRT1_2}};
  std::vector<std::array<double, 2>> grid;
  for (double mag : mags)
    for (const auto& dir : dirs)
      grid.push_back({mag * dir[0], mag * dir[1]});
  return grid;
}

EcfReport ecf_check(const PairSample& sample, const FieldSpec& spec,
                    long long k1, long long k2,
                    const std::vector<std::array<double, 2>>& theta_grid,
                    double confidence) {
  const std::size_t n = sample.x0.size();
  if (n < 100 || sample.xk.size() != n) {
    throw InvalidParameterError(
        "ecf check needs at least 100 paired samples");
  }
  if (!(confidence > 0.5 && confidence < 1.0)) {
    throw InvalidParameterError("confidence level must lie in (0.5, 1)");
  }
  if (theta_grid.empty()) {
    throw InvalidParameterError("theta grid must be non-empty");
  }

  EcfReport report;
  report.samples = n;
  const double stats = 2.0 * static_cast<double>(theta_grid.size());
  report.z = normal_quantile(1.0 - (1.0 - confidence) / (2.0 * stats));
  const double nd = static_cast<double>(n);

  for (const auto& theta : theta_grid) {
    const double th1 = theta[0], th2 = theta[1];
    const ChfExponent psi = chf_exponent(spec, k1, k2, th1, th2, 1e-8);
    const double expected = std::exp(-psi.value);
    double sc = 0.0, ss = 0.0, sc2 = 0.0, ss2 = 0.0;
    for (std::size_t s = 0; s < n; ++s) {
      const double arg = th1 * sample.x0[s] + th2 * sample.xk[s];
      const double cth = std::cos(arg), sth = std::sin(arg);
      sc += cth;
      ss += sth;
      sc2 += cth * cth;
      ss2 += sth * sth;
    }
    const double mc = sc / nd, ms = ss / nd;
    const double vc = std::max(0.0, sc2 / nd - mc * mc) * nd / (nd - 1.0);
    const double vs = std::max(0.0, ss2 / nd - ms * ms) * nd / (nd - 1.0);
    // |exp(-x) - exp(-y)| <= |x - y| for x, y >= 0: exponent-level slack
    // (quadrature bound plus tail-collapse direction bias or discarded
    // truncation mass) transfers directly to the characteristic function.
    const double slack =
        psi.error_bound +
        std::pow(std::fabs(th1) + std::fabs(th2), spec.alpha) *
            (sample.direction_bias_mass + sample.truncated_mass);
    EcfRow re{th1, th2, 'R', mc, expected, 0.0, false};
    re.band = report.z * std::sqrt(vc / nd) + slack;
    re.pass = std::fabs(re.measured - re.expected) <= re.band;
    EcfRow im{th1, th2, 'I', ms, 0.0, 0.0, false};
    im.band = report.z * std::sqrt(vs / nd) + slack;
    im.pass = std::fabs(im.measured) <= im.band;
    report.rows.push_back(re);
    report.rows.push_back(im);
  }
  report.all_pass = std::all_of(report.rows.begin(), report.rows.end(),
                                [](const EcfRow& r) { return r.pass; });
  return report;
}

EcfReport ecf_check(const FieldSpec& spec, long long k1, long long k2,
                    std::size_t n, double confidence, const SimOptions& opt) {
  const PairSample sample = simulate_pairs(spec, k1, k2, n, opt);
  return ecf_check(sample, spec, k1, k2, default_theta_grid(), confidence);
}

TailRhoEstimate tail_rho_estimate(const PairSample& sample,
                                  const FieldSpec& spec, long long k1,
                                  long long k2, double threshold_quantile) {
  if (!(threshold_quantile > 0.9 && threshold_quantile < 1.0)) {
    throw InvalidParameterError(
        "threshold_quantile must lie in (0.9, 1)");
  }
  const std::size_t n = sample.x0.size();
  if (sample.xk.size() != n || n == 0) {
    throw InvalidParameterError("tail estimate needs a paired sample");
  }
  std::vector<double> radius(n);
  for (std::size_t i = 0; i < n; ++i) {
    radius[i] = std::hypot(sample.x0[i], sample.xk[i]);
  }
  // u = empirical quantile; exceedances are the radii strictly above it.
  std::vector<double> sorted(radius);
  const std::size_t pos = std::min<std::size_t>(
      n - 1, static_cast<std::size_t>(threshold_quantile *
                                      static_cast<double>(n)));
  std::nth_element(sorted.begin(), sorted.begin() + pos, sorted.end());
  const double u = sorted[pos];
  if (!(u > 0.0)) {
    throw TooFewExceedancesError("degenerate radius threshold");
  }

  double angular_sum = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (radius[i] > u) {
      angular_sum += sample.x0[i] * sample.xk[i] / (radius[i] * radius[i]);
      ++count;
    }
  }
  if (count < 500) {
    throw TooFewExceedancesError(
        "tail estimate needs at least 500 exceedances, got " +
        std::to_string(count));
  }

  const SpectralMasses masses = spectral_masses(spec, k1, k2);
  TailRhoEstimate est;
  est.threshold = u;
  est.exceedances = count;
  est.total_mass = masses.total_mass;
  est.angular_mean = angular_sum / static_cast<double>(count);
  est.value = est.total_mass * est.angular_mean;
  return est;
}

}  // namespace stablefield
