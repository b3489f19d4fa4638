#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "traceq/core.hpp"
#include "traceq/query.hpp"

namespace traceq::analysis {

/// Difference-constraint view of a query's gap and window bounds over the
/// embedding values E(1..l). A constraint (cmin,cmax,r)_j becomes
/// cmin+1 <= E(j+r) - E(j) <= cmax+1, adjacency adds E(i+1) - E(i) >= 1, and
/// a finite window adds E(l) - E(1) <= w-1. Feasibility and tight bounds
/// come from all-pairs shortest paths with negative-cycle detection.
class DifferenceSystem {
 public:
  static DifferenceSystem build(const Query& q, bool include_window);

  bool feasible() const { return feasible_; }
  std::size_t size() const { return n_; }

  /// Tightest upper bound on E(v) - E(u), 1-based nodes; nullopt when
  /// unconstrained. Only meaningful when feasible.
  std::optional<std::int64_t> upper(std::size_t u, std::size_t v) const;
  /// Tightest lower bound on E(v) - E(u).
  std::optional<std::int64_t> lower(std::size_t u, std::size_t v) const;

  /// Minimal feasible span E(l) - E(1).
  std::int64_t min_span() const;
  /// Pointwise minimal feasible offsets E(i) - E(1); offsets[0] == 0.
  std::vector<std::int64_t> min_offsets() const;

 private:
  DifferenceSystem() = default;
  std::size_t n_ = 0;
  bool feasible_ = false;
  std::vector<std::vector<std::int64_t>> dist_;  // dist[u][v]: max E(v)-E(u)
};

/// Whether the constraint system (including a finite window) admits any
/// model at all. Query must be well-formed.
bool is_satisfiable(const Query& q);

/// Length shared by all minimal matching traces; nullopt when the query is
/// unsatisfiable. ignore_window drops the window bound from the system.
std::optional<std::size_t> min_match_length(const Query& q, bool ignore_window = false);

/// A minimal-length trace matching q: the string is embedded as far left as
/// the constraints allow, gaps are filled with `filler`, typesets resolve to
/// their least member and variables to `var_fill`. nullopt when
/// unsatisfiable.
std::optional<Trace> construct_min_trace(const Query& q, const TypeSymbol& filler,
                                         const TypeSymbol& var_fill);

/// Position-wise substitution witnessing a homomorphism; typeset positions
/// map to the target's (sub)sets implicitly.
struct Homomorphism {
  std::map<Variable, Symbol> variable_map;
};

/// Substitution h with h(from.symbols) = to.symbols, where variables map
/// consistently, typesets shrink position-wise, and a variable with several
/// occurrences may only land on a singleton typeset. Queries must share
/// length, window, and constraint multiset.
std::optional<Homomorphism> find_homomorphism(const Query& from, const Query& to);

/// Alphabet size above which containment coincides with homomorphism
/// existence for this query's class. Results for GENERAL-class queries
/// (typesets combined with ranges > 1) are a heuristic upper estimate.
std::size_t sufficient_alphabet_size(const Query& q);

struct ContainmentOptions {
  /// Skip the alphabet-size precondition; the verdict then carries no
  /// guarantee.
  bool force = false;
};

/// Whether every trace over `alphabet` matching q also matches q_prime.
/// Decided via homomorphism existence from q_prime to q; requires both
/// queries satisfiable, shared parameters, and an alphabet covering both
/// type sets and the sufficiency bound of q (unless forced).
bool contained_in(const Query& q, const Query& q_prime, const TypeSet& alphabet,
                  ContainmentOptions options = {});

/// Isomorphism up to variable renaming; same-parameter queries only.
bool equivalent(const Query& q, const Query& q_prime);

}  // namespace traceq::analysis
