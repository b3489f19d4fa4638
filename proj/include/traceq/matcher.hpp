#pragma once

#include <optional>

#include "traceq/query.hpp"
#include "traceq/rational.hpp"

namespace traceq::matcher {

/// Whether e satisfies the window (span e(l)-e(1)+1 <= w for finite w) and
/// every gap constraint cmin <= e(j+r)-1-e(j) <= cmax. Symbol-blind.
/// Throws when |e| != query length.
bool embedding_satisfies(const Embedding& e, const Query& q);

/// A witness (assignment, choices, embedding) for q matching t, or nullopt.
/// Deterministic: the returned embedding is the lexicographically least one
/// over all witnesses. Throws on an ill-formed query.
std::optional<Witness> find_witness(const Query& q, const Trace& t);

bool matches(const Query& q, const Trace& t);

/// Fraction of sample traces matching q, exact.
Rational support(const Query& q, const Sample& sample);

}  // namespace traceq::matcher
