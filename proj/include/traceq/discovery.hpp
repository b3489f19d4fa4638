#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "traceq/query.hpp"
#include "traceq/rational.hpp"

namespace traceq::discovery {

/// Layered family of support-satisfying typesets: layer i holds the sets of
/// cardinality i.
struct DeltaFamily {
  std::map<std::size_t, std::set<TypeSet>> layers;

  const std::set<TypeSet>& layer(std::size_t i) const;
  std::size_t total() const;
};

/// Fraction of traces containing at least one member of delta, exact.
Rational typeset_support(const TypeSet& delta, const Sample& sample);

/// All typesets over `alphabet` (default: the sample's types) of size <= k
/// meeting the threshold. Walks the subset lattice top-down from size k,
/// pruning every subset of a failing set; exact by support monotonicity.
DeltaFamily compute_delta(const Sample& sample, const SupportThreshold& threshold, std::size_t k,
                          const TypeSet& alphabet = {});

/// How the discovery loop resolves its "select an arbitrary ..." choices.
struct ChoicePolicy {
  enum class Kind { FirstOccurrence, Seeded };
  Kind kind = Kind::FirstOccurrence;
  std::uint64_t seed = 0;

  static ChoicePolicy first_occurrence() { return {}; }
  static ChoicePolicy seeded(std::uint64_t seed) { return {Kind::Seeded, seed}; }
};

struct DiscoveryParams {
  std::size_t length = 1;
  Bound window = Bound(1);
  std::vector<GapConstraint> constraints;
  std::size_t max_typeset_size = 1;  // k
  ChoicePolicy order;
};

/// String of `length` distinct fresh variables x1..xl with the given window
/// and constraints; contains every same-parameter query.
Query most_general_query(const DiscoveryParams& params);

struct DiscoveryOutcome {
  /// Engaged with a descriptive query, or nullopt when no same-parameter
  /// query covers the sample at the threshold.
  std::optional<Query> query;
  std::size_t main_loop_iterations = 0;
};

/// One run of the replacement loop: visit each variable once, try the Delta
/// layers in increasing size (layer 1 augmented with the available
/// variables), apply the first replacement that keeps the support above the
/// threshold. Rejects parameters whose constraints are unsatisfiable and
/// k > 1 combined with generalised constraints.
DiscoveryOutcome discover(const Sample& sample, const SupportThreshold& threshold,
                          const DiscoveryParams& params);

}  // namespace traceq::discovery
