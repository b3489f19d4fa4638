#include "traceq/matcher.hpp"

#include <algorithm>

#include "traceq/analysis.hpp"
#include "traceq/core.hpp"

namespace traceq::matcher {

bool embedding_satisfies(const Embedding& e, const Query& q) {
  if (e.size() != q.length())
    throw std::invalid_argument("embedding length does not match query length");
  if (q.window().is_finite()) {
    const std::uint64_t span = e.at(e.size()) - e.at(1) + 1;
    if (span > q.window().value()) return false;
  }
  for (const GapConstraint& c : q.constraints()) {
    const std::uint64_t gap = e.at(c.position + c.range) - 1 - e.at(c.position);
    if (gap < c.min_gap) return false;
    if (c.max_gap.is_finite() && gap > c.max_gap.value()) return false;
  }
  return true;
}

namespace {

// Depth-first search for the lexicographically least satisfying embedding.
// Candidate positions are bounded by the tightest pairwise difference
// bounds against everything already placed plus the distance still needed
// to reach the end of the trace.
class WitnessSearch {
 public:
  WitnessSearch(const Query& q, const Trace& t, const analysis::DifferenceSystem& ds)
      : q_(q), t_(t), ds_(ds), e_(q.length(), 0) {}

  std::optional<Witness> run() {
    if (!ds_.feasible()) return std::nullopt;
    if (!extend(1)) return std::nullopt;

    std::map<Variable, TypeSymbol> assign;
    std::map<std::size_t, TypeSymbol> choice;
    for (std::size_t i = 1; i <= q_.length(); ++i) {
      const Symbol& s = q_.symbols()[i - 1];
      const TypeSymbol& picked = t_.at(e_[i - 1]);
      if (s.is_var())
        assign.emplace(s.as_var(), picked);
      else
        choice.emplace(i, picked);
    }
    return Witness{std::move(assign), std::move(choice), Embedding(e_)};
  }

 private:
  bool extend(std::size_t i) {
    if (i > q_.length()) return true;
    const std::size_t n = t_.size();

    std::int64_t lo = 1;
    std::int64_t hi = static_cast<std::int64_t>(n);
    for (std::size_t u = 1; u < i; ++u) {
      const std::int64_t placed = static_cast<std::int64_t>(e_[u - 1]);
      if (auto ub = ds_.upper(u, i)) hi = std::min(hi, placed + *ub);
      if (auto lb = ds_.lower(u, i)) lo = std::max(lo, placed + *lb);
    }
    // keep enough room to reach position l before the trace ends
    if (auto tail = ds_.lower(i, q_.length()))
      hi = std::min(hi, static_cast<std::int64_t>(n) - *tail);

    for (std::int64_t pos = lo; pos <= hi; ++pos) {
      const TypeSymbol& letter = t_.at(static_cast<std::size_t>(pos));
      const Symbol& s = q_.symbols()[i - 1];
      bool bound_here = false;
      if (s.is_typeset()) {
        if (!s.as_typeset().count(letter)) continue;
      } else {
        auto it = binding_.find(s.as_var());
        if (it != binding_.end()) {
          if (it->second != letter) continue;
        } else {
          binding_.emplace(s.as_var(), letter);
          bound_here = true;
        }
      }
      e_[i - 1] = static_cast<std::size_t>(pos);
      if (extend(i + 1)) return true;
      if (bound_here) binding_.erase(s.as_var());
    }
    return false;
  }

  const Query& q_;
  const Trace& t_;
  const analysis::DifferenceSystem& ds_;
  std::vector<std::size_t> e_;
  std::map<Variable, TypeSymbol> binding_;
};

}  // namespace

std::optional<Witness> find_witness(const Query& q, const Trace& t) {
  require_valid(q);
  if (q.length() > t.size()) return std::nullopt;
  const analysis::DifferenceSystem ds = analysis::DifferenceSystem::build(q, true);
  return WitnessSearch(q, t, ds).run();
}

bool matches(const Query& q, const Trace& t) { return find_witness(q, t).has_value(); }

Rational support(const Query& q, const Sample& sample) {
  std::int64_t hits = 0;
  for (const Trace& t : sample.traces())
    if (matches(q, t)) ++hits;
  return Rational(hits, static_cast<std::int64_t>(sample.size()));
}

}  // namespace traceq::matcher
