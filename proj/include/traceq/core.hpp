#pragma once

#include <set>
#include <string>
#include <vector>

#include "traceq/query.hpp"

namespace traceq {

/// One broken rule, naming the offending field.
struct Violation {
  std::string field;
  std::string rule;
};

/// Reports every invariant the query breaks; empty means well-formed.
/// Never throws: unsatisfiable-but-well-formed queries come back clean,
/// the semantics (not the syntax) rules them out.
std::vector<Violation> validate_query(const Query& q);

/// Convenience: throws std::invalid_argument listing the violations.
void require_valid(const Query& q);

/// All positions i with symbols[i] == z (typeset equality is set equality).
std::set<std::size_t> positions_of(const Query& q, const Symbol& z);

/// Replaces every occurrence of x by y; window and constraints unchanged.
/// Throws if x does not occur.
Query replace_symbol(const Query& q, const Variable& x, const Symbol& y);

/// Variables renamed v1, v2, ... in first-occurrence order and constraints
/// sorted by (position, range, min_gap, max_gap). Two queries are isomorphic
/// exactly when their canonical forms compare equal.
Query canonical_form(const Query& q);

}  // namespace traceq
