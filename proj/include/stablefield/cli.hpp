// SPDX-License-Identifier: MIT
// Copyright (c) 2026 stablefield-cov contributors
//
// Command-line frontend.  All functionality is reachable through run_cli so
// tests can drive the full argument-parsing and output path in process.
#pragma once

#include <iosfwd>
#include <string>

#include "stablefield/field_model.hpp"

namespace stablefield {

// Exit codes: 0 success (verify: Converging), 1 numeric failure or a
// Diverging verdict, 2 Uncovered parameter point or Inconclusive verdict,
// 64 usage error.
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

// Arithmetic over numbers and the symbol `alpha` (+, -, *, /, parentheses),
// so resonance values like 1/(alpha-1) can be supplied exactly.
double parse_beta_expr(const std::string& text, double alpha);

// Field description from its JSON form:
//   {"alpha":1.5, "beta1":2, "beta2":2,
//    "weights":{"kind":"constant","value":1}
//            | {"kind":"rational","row_coef":a,"col_coef":b}
//            | {"kind":"table","rows":r,"cols":c,"values":[...]},
//    "override":[{"i":0,"j":0,"value":1}, ...]}
// Missing fields keep their defaults.
FieldSpec parse_field_spec(const std::string& json_text);

// Inverse of parse_field_spec (canonical key order, round-trips).
std::string field_spec_to_json(const FieldSpec& spec);

}  // namespace stablefield
