#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "traceq/query.hpp"
#include "traceq/rational.hpp"

namespace traceq::io {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// One trace per line, whitespace-separated tokens. Empty lines and lines
/// starting with '#' are skipped; a line of nothing but whitespace is an
/// error, as is a reserved character inside a token.
Sample parse_traces(std::string_view text);

/// Line-oriented query format; sections may come in any order, each at most
/// once:
///   string:      ?name | {t1,t2} | bare-token ...
///   window:      positive integer | inf
///   gaps:        min:max, ... (exactly length-1 entries; sugar for r = 1)
///   constraints: j+r:min..max, ...
/// The parsed query is validated; violations surface as ParseError.
Query parse_query(std::string_view text);

/// Emits the format above from the canonical form. Constraint multisets
/// shaped like a full local tuple (one r = 1 entry per adjacent pair) use
/// the gaps section, everything else the constraints section.
std::string serialize_query(const Query& q);

std::string symbol_text(const Symbol& s);
std::string trace_text(const Trace& t);

/// Piece lists for the CLI's --gaps/--constraints flags; `length` is the
/// query-string length they must fit.
std::vector<GapConstraint> parse_gap_list(std::string_view text, std::size_t length);
std::vector<GapConstraint> parse_constraint_list(std::string_view text, std::size_t length);

/// Machine-readable result record. Key order is fixed:
/// command, inputs, verdict, then whichever of witness/support/query/result
/// apply.
struct Report {
  std::string command;
  std::vector<std::pair<std::string, std::string>> inputs;
  std::string verdict;
  std::optional<Witness> witness;
  std::optional<Rational> support;
  std::optional<Query> query;   // serialized into the report
  std::optional<std::string> result_json;  // pre-rendered JSON payload

  Report(std::string cmd, std::string verd) : command(std::move(cmd)), verdict(std::move(verd)) {}
};

std::string write_report(const Report& report);

}  // namespace traceq::io
