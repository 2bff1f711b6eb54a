#pragma once

// Serialisation of verification reports and numeric tables.
//
// Report JSON: {"suite", "seed", "all_pass", "warnings",
//               "checks": [{"id", "params", "abs_err", "rel_err", "pass",
//                           "tol_abs", "tol_rel", "lhs", "rhs", "note"}]}
// CSV: header row, one row per check/table row, RFC-4180 quoting, %.17g numbers.

#include <string>
#include <vector>

#include "fpcavity/verify.hpp"

namespace fpcav {

enum class OutputFormat { csv, json };

std::string emit_report(const SuiteReport& suite, OutputFormat format);

/// Inverse of emit_report(..., json). Doubles round-trip bit-exactly.
SuiteReport parse_report_json(const std::string& text);

/// Named numeric columns; emitted as CSV or as a JSON array of row objects.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

std::string emit_table(const Table& table, OutputFormat format);

/// 17 significant digits ("%.17g").
std::string format_double(double x);

/// Quotes a CSV field when it contains a comma, quote or line break.
std::string csv_field(const std::string& s);

}  // namespace fpcav
