// SPDX-License-Identifier: MIT
// Copyright (c) 2026 stablefield-cov contributors

#include "stablefield/cli.hpp"

#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "stablefield/classifier.hpp"
#include "stablefield/constants.hpp"
#include "stablefield/errors.hpp"
#include "stablefield/exact_cov.hpp"
#include "stablefield/sim.hpp"
#include "stablefield/verifier.hpp"

namespace stablefield {

namespace {

constexpr const char* kCsvBanner = "# stablefield-cov v1\n";

// Malformed invocation text (as opposed to an inadmissible numeric domain,
// which the library reports): printed to stderr, exit code 64.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ----------------------------- expression parser ---------------------------

class ExprParser {
 public:
  ExprParser(const std::string& text, double alpha)
      : text_(text), alpha_(alpha) {}

  double parse() {
    const double v = expr();
    skip_ws();
    if (pos_ != text_.size()) {
      throw InvalidParameterError("unexpected trailing input in expression '" +
                                  text_ + "'");
    }
    return v;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }
  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  double expr() {
    double v = term();
    for (;;) {
      if (eat('+')) {
        v += term();
      } else if (eat('-')) {
        v -= term();
      } else {
        return v;
      }
    }
  }
  double term() {
    double v = factor();
    for (;;) {
      if (eat('*')) {
        v *= factor();
      } else if (eat('/')) {
        const double d = factor();
        if (d == 0.0) throw InvalidParameterError("division by zero in '" +
                                                  text_ + "'");
        v /= d;
      } else {
        return v;
      }
    }
  }
  double factor() {
    skip_ws();
    if (eat('-')) return -factor();
    if (eat('(')) {
      const double v = expr();
      if (!eat(')')) {
        throw InvalidParameterError("missing ')' in expression '" + text_ +
                                    "'");
      }
      return v;
    }
    if (pos_ < text_.size() &&
        std::isalpha(static_cast<unsigned char>(text_[pos_]))) {
      std::size_t end = pos_;
      while (end < text_.size() &&
             std::isalpha(static_cast<unsigned char>(text_[end])))
        ++end;
      const std::string name = text_.substr(pos_, end - pos_);
      if (name != "alpha") {
        throw InvalidParameterError("unknown symbol '" + name +
                                    "' in expression (only 'alpha')");
      }
      pos_ = end;
      return alpha_;
    }
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(text_.substr(pos_), &used);
    } catch (const std::exception&) {
      throw InvalidParameterError("expected a number in expression '" + text_ +
                                  "' at position " + std::to_string(pos_));
    }
    pos_ += used;
    return v;
  }

  const std::string& text_;
  double alpha_;
  std::size_t pos_ = 0;
};

// ----------------------------- JSON plumbing -------------------------------

nlohmann::json weights_to_json(const WeightFamily& w) {
  switch (w.kind) {
    case WeightKind::Constant:
      return {{"kind", "constant"}, {"value", w.value}};
    case WeightKind::Rational:
      return {{"kind", "rational"},
              {"row_coef", w.row_coef},
              {"col_coef", w.col_coef}};
    case WeightKind::Table:
      return {{"kind", "table"},
              {"rows", w.rows},
              {"cols", w.cols},
              {"values", w.values}};
  }
  return {};
}

WeightFamily weights_from_json(const nlohmann::json& j) {
  const std::string kind = j.value("kind", "constant");
  if (kind == "constant") {
    return WeightFamily::constant(j.value("value", 1.0));
  }
  if (kind == "rational") {
    return WeightFamily::rational(j.value("row_coef", 0.0),
                                  j.value("col_coef", 0.0));
  }
  if (kind == "table") {
    return WeightFamily::table(j.at("rows").get<std::size_t>(),
                               j.at("cols").get<std::size_t>(),
                               j.at("values").get<std::vector<double>>());
  }
  throw InvalidParameterError("unknown weight kind '" + kind +
                              "' (constant|rational|table)");
}

FieldSpec spec_from_json(const nlohmann::json& j) {
  FieldSpec spec;
  spec.alpha = j.value("alpha", spec.alpha);
  spec.beta1 = j.value("beta1", spec.beta1);
  spec.beta2 = j.value("beta2", spec.beta2);
  if (j.contains("weights")) spec.weights = weights_from_json(j["weights"]);
  if (j.contains("override")) {
    for (const auto& entry : j["override"]) {
      spec.override_atoms.push_back({entry.at("i").get<long long>(),
                                     entry.at("j").get<long long>(),
                                     entry.at("value").get<double>()});
    }
  }
  return spec;
}

nlohmann::json spec_to_json(const FieldSpec& spec) {
  nlohmann::json j;
  j["alpha"] = spec.alpha;
  j["beta1"] = spec.beta1;
  j["beta2"] = spec.beta2;
  j["weights"] = weights_to_json(spec.weights);
  if (spec.has_override()) {
    auto& arr = j["override"] = nlohmann::json::array();
    for (const Atom& at : spec.override_atoms) {
      arr.push_back({{"i", at.i}, {"j", at.j}, {"value", at.value}});
    }
  }
  return j;
}

nlohmann::json regime_to_json(const Regime& r) {
  nlohmann::json logs = nlohmann::json::array();
  for (const LogFactor& lf : r.rate.logs) {
    logs.push_back({{"u", lf.u}, {"v", lf.v}});
  }
  nlohmann::json j;
  j["theorem"] = r.quadrant == LagQuadrant::PosPos ? 1 : 2;
  j["case"] = r.case_id;
  j["subcase"] = r.subcase ? std::string(1, r.subcase) : std::string();
  j["mirrored"] = r.mirrored;
  j["rate"] = {{"a", r.rate.n_exp}, {"b", r.rate.m_exp}, {"logs", logs}};
  j["rate_text"] = r.rate.describe();
  j["constant_recipe"] = describe(r.constant);
  j["summary"] = r.summary;
  return j;
}

// ----------------------------- shared options ------------------------------

struct SpecArgs {
  std::string config_path;
  std::optional<double> alpha;
  std::string beta1_text, beta2_text;
  std::string weight_kind;
  std::optional<double> weight_value, row_coef, col_coef;
  bool symbolic = false;

  void attach(CLI::App* cmd, bool symbolic_beta) {
    symbolic = symbolic_beta;
    cmd->add_option("--config", config_path,
                    "JSON file with the field description (flags override "
                    "file values)");
    cmd->add_option("--alpha", alpha, "stability index in (0, 2]");
    const char* beta_help =
        symbolic_beta
            ? "decay exponent (arithmetic over numbers and 'alpha' allowed, "
              "e.g. \"1/(alpha-1)\")"
            : "decay exponent";
    cmd->add_option("--beta1", beta1_text, beta_help);
    cmd->add_option("--beta2", beta2_text, beta_help);
    cmd->add_option("--weight-kind", weight_kind,
                    "weight family: constant|rational|table (table only via "
                    "--config)");
    cmd->add_option("--weight-value", weight_value,
                    "constant-family weight value");
    cmd->add_option("--row-coef", row_coef, "rational-family row coefficient");
    cmd->add_option("--col-coef", col_coef,
                    "rational-family column coefficient");
  }

  double parse_beta(const std::string& text, double alpha_value) const {
    if (symbolic) return parse_beta_expr(text, alpha_value);
    // Numeric-only commands: a bare number, nothing else.
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(text, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    while (used < text.size() &&
           std::isspace(static_cast<unsigned char>(text[used])))
      ++used;
    if (used != text.size()) {
      throw UsageError(
          "this command takes numeric decay exponents only ('" + text +
          "'); expressions such as \"1/(alpha-1)\" work with classify, "
          "constant, and verify");
    }
    return v;
  }

  FieldSpec build(bool validated = true) const {
    FieldSpec spec;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) {
        throw UsageError("cannot open config file '" + config_path + "'");
      }
      std::ostringstream buf;
      buf << in.rdbuf();
      spec = parse_field_spec(buf.str());
    }
    if (alpha) spec.alpha = *alpha;
    if (!beta1_text.empty()) spec.beta1 = parse_beta(beta1_text, spec.alpha);
    if (!beta2_text.empty()) spec.beta2 = parse_beta(beta2_text, spec.alpha);
    if (!weight_kind.empty()) {
      if (weight_kind == "constant") {
        spec.weights = WeightFamily::constant(weight_value.value_or(1.0));
      } else if (weight_kind == "rational") {
        spec.weights = WeightFamily::rational(row_coef.value_or(0.0),
                                              col_coef.value_or(0.0));
      } else {
        throw UsageError(
            "--weight-kind accepts constant|rational here; table weights "
            "need --config");
      }
    } else if (weight_value) {
      spec.weights = WeightFamily::constant(*weight_value);
    }
    if (validated) validate(spec);
    return spec;
  }
};

struct DirectionArgs {
  std::string kind;  // "", zero, const, infinity
  double c = 1.0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--direction", kind,
                    "mixed-sign approach direction: zero|const|infinity");
    cmd->add_option("--c", c,
                    "limit of m^{-beta2}/n^{-beta1} for --direction const");
  }

  std::optional<Direction> build() const {
    if (kind.empty()) return std::nullopt;
    if (kind == "zero") return Direction::to_zero();
    if (kind == "const") return Direction::to_const(c);
    if (kind == "infinity") return Direction::to_infinity();
    throw UsageError("--direction accepts zero|const|infinity");
  }
};

LagQuadrant parse_quadrant(const std::string& text) {
  if (text == "pospos" || text == "++") return LagQuadrant::PosPos;
  if (text == "posneg" || text == "+-") return LagQuadrant::PosNeg;
  throw UsageError("--quadrant accepts pospos|posneg");
}

std::pair<long long, long long> parse_lag(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) {
    throw UsageError("lag must be 'k1,k2', e.g. --k 3,-4");
  }
  try {
    return {std::stoll(text.substr(0, comma)),
            std::stoll(text.substr(comma + 1))};
  } catch (const std::exception&) {
    throw UsageError("lag components must be integers: '" + text + "'");
  }
}

// Environment cap on summation budgets.
void apply_budget_env(CovOptions& opt) {
  if (const char* env = std::getenv("STABLEFIELD_MAX_TERMS")) {
    char* end = nullptr;
    const long long cap = std::strtoll(env, &end, 10);
    if (end != env && cap > 0) {
      opt.max_rows = std::min(opt.max_rows, cap);
      opt.max_terms_per_row = std::min(opt.max_terms_per_row, cap);
      opt.max_box_terms = std::min(opt.max_box_terms, cap);
    }
  }
}

std::string error_kind(const Error& e) {
  if (dynamic_cast<const DirectionRequiredError*>(&e))
    return "direction-required";
  if (dynamic_cast<const NonIntegrableError*>(&e)) return "non-integrable";
  if (dynamic_cast<const LogDomainError*>(&e)) return "log-domain";
  if (dynamic_cast<const ConstantEvaluationError*>(&e))
    return "constant-evaluation";
  if (dynamic_cast<const ToleranceUnreachableError*>(&e))
    return "tolerance-unreachable";
  if (dynamic_cast<const TooFewExceedancesError*>(&e))
    return "too-few-exceedances";
  if (dynamic_cast<const TruncationTooCoarseError*>(&e))
    return "truncation-too-coarse";
  if (dynamic_cast<const DegenerateMarginalError*>(&e))
    return "degenerate-marginal";
  if (dynamic_cast<const InvalidParameterError*>(&e))
    return "invalid-parameter";
  return "numeric";
}

std::ostream& open_out(const std::string& path, std::ofstream& file,
                       std::ostream& fallback) {
  if (path.empty() || path == "-") return fallback;
  file.open(path, std::ios::binary);
  if (!file) {
    throw UsageError("cannot open output file '" + path + "'");
  }
  return file;
}

// ----------------------------- subcommand bodies ---------------------------

struct GlobalArgs {
  std::string format = "json";  // csv|json
  std::string out_path;
  double tol = 0.0;  // 0 = engine default
  std::uint64_t seed = 0x517ab1e5u;
  int threads = 1;
};

int cmd_cov(const SpecArgs& sa, const GlobalArgs& ga, const std::string& lag,
            std::ostream& out) {
  const FieldSpec spec = sa.build();
  const auto [k1, k2] = parse_lag(lag);
  CovOptions opt;
  if (ga.tol > 0.0) opt.rel_tol = ga.tol;
  apply_budget_env(opt);
  const CovResult r = rho(spec, k1, k2, opt);
  const SpectralMasses m = spectral_masses(spec, k1, k2, opt);

  std::ofstream file;
  std::ostream& os = open_out(ga.out_path, file, out);
  if (ga.format == "csv") {
    os << kCsvBanner << "value,error_bound,terms_used,scc,tolerance_met\n";
    char buf[200];
    std::snprintf(buf, sizeof(buf), "%.12g,%.12g,%lld,%.12g,%d\n", r.value,
                  r.error_bound, r.rows_used, m.scc, m.tolerance_met ? 1 : 0);
    os << buf;
  } else {
    nlohmann::json j;
    j["value"] = r.value;
    j["error_bound"] = r.error_bound;
    j["terms_used"] = r.rows_used;
    j["scc"] = m.scc;
    j["masses"] = {{"s1_sq", m.mass_s1_sq},
                   {"s2_sq", m.mass_s2_sq},
                   {"total", m.total_mass},
                   {"error", m.mass_error}};
    j["tolerance_met"] = m.tolerance_met;
    j["spec"] = spec_to_json(spec);
    j["lag"] = {k1, k2};
    os << j.dump(2) << '\n';
  }
  return 0;
}

int cmd_classify(const SpecArgs& sa, const DirectionArgs& da,
                 const GlobalArgs& ga, const std::string& quadrant,
                 std::ostream& out) {
  // Skip full validation so inadmissible parameter points can still be
  // reported as uncovered by the classifier.
  const FieldSpec spec = sa.build(false);
  const Classification cls =
      classify(spec.alpha, spec.beta1, spec.beta2, parse_quadrant(quadrant),
               da.build());
  std::ofstream file;
  std::ostream& os = open_out(ga.out_path, file, out);
  if (const auto* unc = std::get_if<Uncovered>(&cls)) {
    if (ga.format == "csv") {
      os << kCsvBanner << "covered,reason\n0,\"" << unc->reason << "\"\n";
    } else {
      nlohmann::json j;
      j["covered"] = false;
      j["reason"] = unc->reason;
      os << j.dump(2) << '\n';
    }
    return 2;
  }
  const Regime& r = std::get<Regime>(cls);
  if (ga.format == "csv") {
    os << kCsvBanner << "theorem,case,subcase,mirrored,rate\n";
    os << (r.quadrant == LagQuadrant::PosPos ? 1 : 2) << ',' << r.case_id
       << ',' << (r.subcase ? std::string(1, r.subcase) : std::string())
       << ',' << (r.mirrored ? 1 : 0) << ",\"" << r.rate.describe() << "\"\n";
  } else {
    nlohmann::json j = regime_to_json(r);
    j["covered"] = true;
    os << j.dump(2) << '\n';
  }
  return 0;
}

int cmd_constant(const SpecArgs& sa, const DirectionArgs& da,
                 const GlobalArgs& ga, const std::string& quadrant,
                 bool consistent_form, std::ostream& out) {
  const FieldSpec spec = sa.build();
  const Classification cls =
      classify(spec, parse_quadrant(quadrant), da.build());
  std::ofstream file;
  std::ostream& os = open_out(ga.out_path, file, out);
  if (const auto* unc = std::get_if<Uncovered>(&cls)) {
    nlohmann::json j;
    j["covered"] = false;
    j["reason"] = unc->reason;
    os << j.dump(2) << '\n';
    return 2;
  }
  const Regime& r = std::get<Regime>(cls);
  ConstOptions copt;
  if (ga.tol > 0.0) copt.rel_tol = ga.tol;
  copt.cmixed_printed_form = !consistent_form;
  const ConstantValue cv = constant_eval(spec, r, copt);
  if (ga.format == "csv") {
    os << kCsvBanner << "value,error_bound,converged\n";
    char buf[120];
    std::snprintf(buf, sizeof(buf), "%.12g,%.12g,%d\n", cv.value,
                  cv.error_bound, cv.converged ? 1 : 0);
    os << buf;
  } else {
    nlohmann::json j;
    j["value"] = cv.value;
    j["error_bound"] = cv.error_bound;
    j["converged"] = cv.converged;
    j["recipe"] = describe(r.constant);
    j["regime"] = regime_to_json(r);
    os << j.dump(2) << '\n';
  }
  return 0;
}

int cmd_verify(const SpecArgs& sa, const DirectionArgs& da,
               const GlobalArgs& ga, const std::string& quadrant,
               long long n_min, long long n_max, int growth,
               const std::string& diag, double gap_target,
               const std::string& json_out, bool adjudicate,
               std::ostream& out) {
  const FieldSpec spec = sa.build();
  const Classification cls =
      classify(spec, parse_quadrant(quadrant), da.build());
  if (const auto* unc = std::get_if<Uncovered>(&cls)) {
    nlohmann::json j;
    j["covered"] = false;
    j["reason"] = unc->reason;
    out << j.dump(2) << '\n';
    return 2;
  }
  const Regime& r = std::get<Regime>(cls);

  VerifyOptions vopt;
  vopt.schedule.n_min = n_min;
  vopt.schedule.n_max = n_max;
  vopt.schedule.growth = growth;
  if (diag == "equal") {
    vopt.schedule.diag = DiagonalKind::Equal;
  } else if (diag == "square") {
    vopt.schedule.diag = DiagonalKind::SquareM;
  } else if (diag == "sqrt") {
    vopt.schedule.diag = DiagonalKind::SqrtM;
  } else if (!diag.empty()) {
    throw UsageError("--diag accepts equal|square|sqrt");
  }
  if (gap_target > 0.0) vopt.gap_target = gap_target;
  if (ga.tol > 0.0) vopt.rho_rel_tol = ga.tol;

  if (adjudicate) {
    const AdjudicationReport rep = adjudicate_cmixed(spec, r, vopt);
    nlohmann::json j;
    j["regime"] = regime_to_json(rep.regime);
    j["printed_constant"] = rep.printed_constant;
    j["consistent_constant"] = rep.consistent_constant;
    j["gap_printed"] = rep.gap_printed;
    j["gap_consistent"] = rep.gap_consistent;
    j["conclusion"] = rep.conclusion;
    auto& rows = j["rows"] = nlohmann::json::array();
    for (const ReportRow& row : rep.rows) {
      rows.push_back({{"n", row.n},
                      {"m", row.m},
                      {"rho", row.rho},
                      {"ratio", row.ratio}});
    }
    out << j.dump(2) << '\n';
    return 0;
  }

  const ConvergenceReport rep = run_convergence(spec, r, vopt);
  std::ofstream file;
  std::ostream& os = open_out(ga.out_path, file, out);
  os << kCsvBanner;
  write_csv(rep, os);
  // Verdict lives in a comment row so the table stays machine-readable.
  os << "# verdict: " << to_string(rep.verdict) << " | " << rep.explanation
     << '\n';
  if (!json_out.empty()) {
    std::ofstream jf(json_out);
    if (!jf) {
      throw UsageError("cannot open JSON sidecar '" + json_out +
                                  "'");
    }
    write_json(rep, jf);
  }
  switch (rep.verdict) {
    case Verdict::Converging: return 0;
    case Verdict::Inconclusive: return 2;
    case Verdict::Diverging: return 1;
  }
  return 1;
}

int cmd_simulate(const SpecArgs& sa, const GlobalArgs& ga,
                 const std::string& lag, std::size_t n, int box,
                 bool no_collapse, bool run_ecf, double confidence,
                 double tail_quantile, std::ostream& out) {
  const FieldSpec spec = sa.build();
  const auto [k1, k2] = parse_lag(lag);
  SimOptions sopt;
  sopt.box = box;
  sopt.collapse_tails = !no_collapse;
  sopt.seed = ga.seed;
  const PairSample sample = simulate_pairs(spec, k1, k2, n, sopt);

  nlohmann::json j;
  j["samples"] = n;
  j["seed"] = ga.seed;
  j["direction_bias_mass"] = sample.direction_bias_mass;
  j["truncated_mass"] = sample.truncated_mass;

  if (!ga.out_path.empty()) {
    // Binary pair stream: magic "SASP", u32 version, u64 count, then
    // little-endian float64 (x0, xk) pairs.
    std::ofstream bin(ga.out_path, std::ios::binary);
    if (!bin) {
      throw UsageError("cannot open output file '" + ga.out_path +
                                  "'");
    }
    bin.write("SASP", 4);
    const std::uint32_t version = 1;
    const std::uint64_t count = n;
    bin.write(reinterpret_cast<const char*>(&version), sizeof version);
    bin.write(reinterpret_cast<const char*>(&count), sizeof count);
    for (std::size_t i = 0; i < n; ++i) {
      bin.write(reinterpret_cast<const char*>(&sample.x0[i]), sizeof(double));
      bin.write(reinterpret_cast<const char*>(&sample.xk[i]), sizeof(double));
    }
    j["dump"] = ga.out_path;
  }

  if (run_ecf) {
    const EcfReport rep =
        ecf_check(sample, spec, k1, k2, default_theta_grid(), confidence);
    j["ecf"] = {{"all_pass", rep.all_pass},
                {"z", rep.z},
                {"summary", rep.summary()}};
    auto& rows = j["ecf"]["rows"] = nlohmann::json::array();
    for (const EcfRow& r : rep.rows) {
      rows.push_back({{"theta1", r.theta1},
                      {"theta2", r.theta2},
                      {"part", std::string(1, r.part)},
                      {"measured", r.measured},
                      {"expected", r.expected},
                      {"band", r.band},
                      {"pass", r.pass}});
    }
  }
  if (tail_quantile > 0.0) {
    const TailRhoEstimate est =
        tail_rho_estimate(sample, spec, k1, k2, tail_quantile);
    CovOptions copt;
    apply_budget_env(copt);
    const CovResult exact = rho(spec, k1, k2, copt);
    j["tail_rho"] = {{"estimate", est.value},
                     {"threshold", est.threshold},
                     {"exceedances", est.exceedances},
                     {"total_mass", est.total_mass},
                     {"exact", exact.value},
                     {"exact_error", exact.error_bound}};
  }
  out << j.dump(2) << '\n';
  return 0;
}

int cmd_regime_map(const SpecArgs& sa, const DirectionArgs& da,
                   const GlobalArgs& ga, const std::string& quadrant,
                   double beta_min, double beta_max, int steps,
                   std::ostream& out) {
  if (!(beta_max > beta_min) || steps < 2) {
    throw UsageError("regime-map needs beta_max > beta_min and at least 2 steps");
  }
  const FieldSpec spec = sa.build(false);
  const LagQuadrant q = parse_quadrant(quadrant);
  const auto dir = da.build();
  std::ofstream file;
  std::ostream& os = open_out(ga.out_path, file, out);
  os << kCsvBanner << "beta1,beta2,label\n";
  char buf[200];
  for (int i = 0; i < steps; ++i) {
    const double b1 = beta_min + (beta_max - beta_min) * i / (steps - 1);
    for (int jj = 0; jj < steps; ++jj) {
      const double b2 = beta_min + (beta_max - beta_min) * jj / (steps - 1);
      std::string label;
      try {
        const Classification cls = classify(spec.alpha, b1, b2, q, dir);
        label = std::holds_alternative<Uncovered>(cls)
                    ? "uncovered"
                    : std::get<Regime>(cls).label();
      } catch (const DirectionRequiredError&) {
        label = "direction-required";
      } catch (const InvalidParameterError&) {
        label = "inadmissible";
      }
      std::snprintf(buf, sizeof(buf), "%.10g,%.10g,\"%s\"\n", b1, b2,
                    label.c_str());
      os << buf;
    }
  }
  return 0;
}

}  // namespace

// ----------------------------- public API ----------------------------------

double parse_beta_expr(const std::string& text, double alpha) {
  return ExprParser(text, alpha).parse();
}

FieldSpec parse_field_spec(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidParameterError(std::string("invalid field JSON: ") +
                                e.what());
  }
  try {
    return spec_from_json(j);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidParameterError(std::string("field JSON schema error: ") +
                                e.what());
  }
}

std::string field_spec_to_json(const FieldSpec& spec) {
  return spec_to_json(spec).dump(2);
}

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app{
      "stablefield-cov: spectral covariances of two-dimensional stable "
      "moving-average fields - exact values, decay regimes, limiting "
      "constants, convergence checks, and simulation"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may appear after the subcommand

  GlobalArgs ga;
  app.add_option("--format", ga.format, "output format: json|csv")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", ga.out_path, "write primary output to this file");
  app.add_option("--tol", ga.tol, "relative tolerance for the engines");
  app.add_option("--seed", ga.seed, "simulation seed");
  app.add_option("--threads", ga.threads,
                 "worker hint (engines are deterministic regardless)");

  // cov
  auto* cov = app.add_subcommand(
      "cov", "exact spectral covariance and normalized coefficient for a lag");
  SpecArgs cov_spec;
  cov_spec.attach(cov, false);
  std::string cov_lag;
  cov->add_option("--k", cov_lag, "lag 'k1,k2', e.g. 3,-4")->required();

  // classify
  auto* cls = app.add_subcommand("classify", "decay regime for a parameter point");
  SpecArgs cls_spec;
  cls_spec.attach(cls, true);
  DirectionArgs cls_dir;
  cls_dir.attach(cls);
  std::string cls_quadrant = "pospos";
  cls->add_option("--quadrant", cls_quadrant, "pospos|posneg");

  // constant
  auto* cst = app.add_subcommand("constant",
                                 "limiting constant for a classified regime");
  SpecArgs cst_spec;
  cst_spec.attach(cst, true);
  DirectionArgs cst_dir;
  cst_dir.attach(cst);
  std::string cst_quadrant = "pospos";
  bool cst_consistent = false;
  cst->add_option("--quadrant", cst_quadrant, "pospos|posneg");
  cst->add_flag("--consistent-form", cst_consistent,
                "use the internally consistent scale for the published "
                "constant-direction recipe");

  // verify
  auto* ver = app.add_subcommand(
      "verify", "drive exact covariances along a lag schedule and test "
                "convergence to the predicted constant");
  SpecArgs ver_spec;
  ver_spec.attach(ver, true);
  DirectionArgs ver_dir;
  ver_dir.attach(ver);
  std::string ver_quadrant = "pospos";
  long long ver_nmin = 16, ver_nmax = 1024;
  int ver_growth = 2;
  std::string ver_diag = "equal";
  double ver_gap = 0.0;
  std::string ver_json_out;
  bool ver_adjudicate = false;
  ver->add_option("--quadrant", ver_quadrant, "pospos|posneg");
  ver->add_option("--n-min", ver_nmin, "first lag size");
  ver->add_option("--n-max", ver_nmax, "last lag size");
  ver->add_option("--growth", ver_growth, "lag multiplier per row");
  ver->add_option("--diag", ver_diag,
                  "same-sign schedule: equal|square|sqrt");
  ver->add_option("--gap-target", ver_gap,
                  "required final relative gap (default 0.05, 0.10 with "
                  "log factors)");
  ver->add_option("--json-out", ver_json_out, "verdict sidecar file");
  ver->add_flag("--adjudicate", ver_adjudicate,
                "compare the published constant-direction scale against the "
                "internally consistent one");

  // simulate
  auto* sim = app.add_subcommand(
      "simulate", "draw joint pairs; optional characteristic-function and "
                  "tail-covariance checks");
  SpecArgs sim_spec;
  sim_spec.attach(sim, false);
  std::string sim_lag;
  std::size_t sim_n = 10000;
  int sim_box = 48;
  bool sim_no_collapse = false, sim_ecf = false;
  double sim_conf = 0.99, sim_tailq = 0.0;
  sim->add_option("--k", sim_lag, "lag 'k1,k2'")->required();
  sim->add_option("--n", sim_n, "number of pair draws");
  sim->add_option("--box", sim_box, "shared-innovation box size");
  sim->add_flag("--no-collapse", sim_no_collapse,
                "plain truncation instead of exact tail collapse");
  sim->add_flag("--ecf", sim_ecf,
                "run the empirical characteristic-function check");
  sim->add_option("--confidence", sim_conf, "ecf simultaneous confidence");
  sim->add_option("--tail-quantile", sim_tailq,
                  "run the tail covariance estimate at this radius quantile "
                  "(in (0.9, 1))");

  // regime-map
  auto* map = app.add_subcommand(
      "regime-map", "sweep a beta grid and emit case labels as CSV");
  SpecArgs map_spec;
  map_spec.attach(map, true);
  DirectionArgs map_dir;
  map_dir.attach(map);
  std::string map_quadrant = "pospos";
  double map_bmin = 0.8, map_bmax = 4.0;
  int map_steps = 17;
  map->add_option("--quadrant", map_quadrant, "pospos|posneg");
  map->add_option("--beta-min", map_bmin, "grid start");
  map->add_option("--beta-max", map_bmax, "grid end");
  map->add_option("--steps", map_steps, "grid points per axis");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return 64;
  }

  try {
    if (cov->parsed()) return cmd_cov(cov_spec, ga, cov_lag, out);
    if (cls->parsed())
      return cmd_classify(cls_spec, cls_dir, ga, cls_quadrant, out);
    if (cst->parsed())
      return cmd_constant(cst_spec, cst_dir, ga, cst_quadrant, cst_consistent,
                          out);
    if (ver->parsed())
      return cmd_verify(ver_spec, ver_dir, ga, ver_quadrant, ver_nmin,
                        ver_nmax, ver_growth, ver_diag, ver_gap, ver_json_out,
                        ver_adjudicate, out);
    if (sim->parsed())
      return cmd_simulate(sim_spec, ga, sim_lag, sim_n, sim_box,
                          sim_no_collapse, sim_ecf, sim_conf, sim_tailq, out);
    if (map->parsed())
      return cmd_regime_map(map_spec, map_dir, ga, map_quadrant, map_bmin,
                            map_bmax, map_steps, out);
    err << "no subcommand selected\n";
    return 64;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 64;
  } catch (const Error& e) {
    if (ga.format == "json") {
      nlohmann::json j;
      j["error"] = {{"type", error_kind(e)}, {"message", e.what()}};
      out << j.dump(2) << '\n';
    }
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace stablefield
