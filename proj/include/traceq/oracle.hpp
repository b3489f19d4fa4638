#pragma once

#include <optional>
#include <set>
#include <vector>

#include "traceq/discovery.hpp"
#include "traceq/query.hpp"
#include "traceq/rational.hpp"

// Brute-force reference implementations. These deliberately share no logic
// with matcher/analysis/discovery: everything is decided by plain
// enumeration straight from the definitions, so they can serve as
// independent ground truth in the test suites. Exponential on purpose; keep
// inputs at desk scale.
namespace traceq::oracle {

/// Enumerates all C(|t|, l) embeddings and looks for one with a consistent
/// assignment. No pruning.
bool brute_matches(const Query& q, const Trace& t);

/// Every satisfying embedding of q in t, in lexicographic order.
std::vector<Embedding> brute_witness_embeddings(const Query& q, const Trace& t);

/// Enumerates traces over types(q) plus one fresh symbol up to the window
/// length (or `length_bound` when the window is infinite; required then).
bool brute_satisfiable(const Query& q, std::optional<std::size_t> length_bound = {});

/// Satisfiability via the pairwise chain characterisation: no two connected
/// constraint chains with shared endpoints may have (i) a minimal gap sum
/// overshooting the window or (ii) one chain's minimal sum above the other's
/// maximal sum. Chains are taken from the constraints plus the implicit
/// (0,inf,1) per adjacent pair.
bool lemma5_check(const Query& q);

/// All traces over `alphabet` of length <= max_length matching q.
std::set<Trace> brute_model_set(const Query& q, const TypeSet& alphabet, std::size_t max_length);

/// Model-set inclusion over `alphabet` at trace lengths <= w. Complete for
/// finite windows: a containment counterexample always contains a
/// counterexample factor no longer than the window.
bool brute_contained(const Query& q, const Query& q_prime, const TypeSet& alphabet);

/// All queries with the given parameters whose positions are drawn from the
/// family's typesets or canonical variables, deduplicated up to isomorphism
/// by restricted-growth variable naming.
std::vector<Query> enumerate_queries(const discovery::DiscoveryParams& params,
                                     const discovery::DeltaFamily& delta);

/// Whether q meets the threshold and no strictly more specific
/// same-parameter query does. Enumerates all candidates over the naive
/// support-satisfying typeset family of the sample.
bool is_descriptive(const Query& q, const Sample& sample, const SupportThreshold& threshold,
                    const discovery::DiscoveryParams& params);

}  // namespace traceq::oracle
