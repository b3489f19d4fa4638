#include "traceq/analysis.hpp"

#include <algorithm>
#include <limits>

namespace traceq::analysis {

namespace {

// Weights large enough to never matter, small enough that path sums cannot
// overflow (paths have at most l hops).
constexpr std::int64_t kNoEdge = std::numeric_limits<std::int64_t>::max();
constexpr std::int64_t kWeightCap = std::numeric_limits<std::int64_t>::max() / 4;

std::int64_t clamp_weight(std::uint64_t v) {
  return v > static_cast<std::uint64_t>(kWeightCap) ? kWeightCap : static_cast<std::int64_t>(v);
}

std::int64_t sat_add(std::int64_t a, std::int64_t b) {
  if (a == kNoEdge || b == kNoEdge) return kNoEdge;
  __int128 s = static_cast<__int128>(a) + b;
  if (s > kWeightCap) return kWeightCap;
  if (s < -kWeightCap) return -kWeightCap;
  return static_cast<std::int64_t>(s);
}

}  // namespace

DifferenceSystem DifferenceSystem::build(const Query& q, bool include_window) {
  DifferenceSystem ds;
  const std::size_t n = q.length();
  ds.n_ = n;
  ds.dist_.assign(n, std::vector<std::int64_t>(n, kNoEdge));
  for (std::size_t i = 0; i < n; ++i) ds.dist_[i][i] = 0;

  auto add_edge = [&ds](std::size_t u, std::size_t v, std::int64_t w) {
    // encodes E(v) - E(u) <= w
    ds.dist_[u][v] = std::min(ds.dist_[u][v], w);
  };

  for (std::size_t i = 0; i + 1 < n; ++i) add_edge(i + 1, i, -1);
  for (const GapConstraint& c : q.constraints()) {
    const std::size_t u = c.position - 1;
    const std::size_t v = c.position + c.range - 1;
    add_edge(v, u, -sat_add(clamp_weight(c.min_gap), 1));
    if (c.max_gap.is_finite()) add_edge(u, v, sat_add(clamp_weight(c.max_gap.value()), 1));
  }
  if (include_window && q.window().is_finite() && n >= 1)
    add_edge(0, n - 1, clamp_weight(q.window().value()) - 1);

  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) {
      if (ds.dist_[i][k] == kNoEdge) continue;
      for (std::size_t j = 0; j < n; ++j) {
        std::int64_t via = sat_add(ds.dist_[i][k], ds.dist_[k][j]);
        if (via < ds.dist_[i][j]) ds.dist_[i][j] = via;
      }
    }

  ds.feasible_ = true;
  for (std::size_t i = 0; i < n; ++i)
    if (ds.dist_[i][i] < 0) ds.feasible_ = false;
  return ds;
}

std::optional<std::int64_t> DifferenceSystem::upper(std::size_t u, std::size_t v) const {
  std::int64_t d = dist_.at(u - 1).at(v - 1);
  if (d == kNoEdge) return std::nullopt;
  return d;
}

std::optional<std::int64_t> DifferenceSystem::lower(std::size_t u, std::size_t v) const {
  std::int64_t d = dist_.at(v - 1).at(u - 1);
  if (d == kNoEdge) return std::nullopt;
  return -d;
}

std::int64_t DifferenceSystem::min_span() const {
  return -dist_.at(n_ - 1).at(0);
}

std::vector<std::int64_t> DifferenceSystem::min_offsets() const {
  std::vector<std::int64_t> out(n_);
  for (std::size_t i = 0; i < n_; ++i) out[i] = -dist_[i][0];
  return out;
}

bool is_satisfiable(const Query& q) {
  require_valid(q);
  return DifferenceSystem::build(q, true).feasible();
}

std::optional<std::size_t> min_match_length(const Query& q, bool ignore_window) {
  require_valid(q);
  DifferenceSystem ds = DifferenceSystem::build(q, !ignore_window);
  if (!ds.feasible()) return std::nullopt;
  return static_cast<std::size_t>(ds.min_span()) + 1;
}

std::optional<Trace> construct_min_trace(const Query& q, const TypeSymbol& filler,
                                         const TypeSymbol& var_fill) {
  require_valid(q);
  DifferenceSystem ds = DifferenceSystem::build(q, true);
  if (!ds.feasible()) return std::nullopt;

  const std::vector<std::int64_t> offsets = ds.min_offsets();
  const std::size_t length = static_cast<std::size_t>(offsets.back()) + 1;
  std::vector<TypeSymbol> items(length, filler);
  for (std::size_t i = 0; i < q.length(); ++i) {
    const Symbol& s = q.symbols()[i];
    items[static_cast<std::size_t>(offsets[i])] =
        s.is_typeset() ? *s.as_typeset().begin() : var_fill;
  }
  return Trace(std::move(items));
}

std::optional<Homomorphism> find_homomorphism(const Query& from, const Query& to) {
  if (!same_parameters(from, to))
    throw std::invalid_argument("incomparable parameters: queries differ in length, window, "
                                "or gap constraints");

  const auto& src = from.symbols();
  const auto& dst = to.symbols();
  Homomorphism h;

  for (std::size_t i = 0; i < src.size(); ++i) {
    if (!src[i].is_typeset()) continue;
    // typesets may only shrink, position-wise
    if (!dst[i].is_typeset()) return std::nullopt;
    const TypeSet& big = src[i].as_typeset();
    const TypeSet& small = dst[i].as_typeset();
    if (small.empty()) return std::nullopt;
    if (!std::includes(big.begin(), big.end(), small.begin(), small.end())) return std::nullopt;
  }

  for (const Variable& z : vars(from)) {
    std::set<std::size_t> occ = positions_of(from, Symbol::var(z));
    auto it = occ.begin();
    const Symbol& image = dst[*it - 1];
    for (++it; it != occ.end(); ++it)
      if (dst[*it - 1] != image) return std::nullopt;
    if (occ.size() >= 2 && image.is_typeset() && image.as_typeset().size() != 1)
      return std::nullopt;
    h.variable_map.emplace(z, image);
  }
  return h;
}

std::size_t sufficient_alphabet_size(const Query& q) {
  if (!is_satisfiable(q))
    throw std::invalid_argument("sufficient_alphabet_size: query is unsatisfiable");
  const std::size_t type_count = types(q).size();
  const std::size_t disjunctive_bound = std::max<std::size_t>(2, type_count);
  switch (query_class(q)) {
    case QueryClass::SWG:
    case QueryClass::DSWG:
      return disjunctive_bound;
    case QueryClass::SWGG:
    case QueryClass::GENERAL: {
      const std::size_t min_len = *min_match_length(q, false);
      const std::size_t range_bound = min_len - q.length() + type_count + 1;
      return query_class(q) == QueryClass::SWGG
                 ? std::max<std::size_t>(2, range_bound)
                 : std::max(disjunctive_bound, range_bound);
    }
  }
  throw std::logic_error("unreachable");
}

bool contained_in(const Query& q, const Query& q_prime, const TypeSet& alphabet,
                  ContainmentOptions options) {
  if (!same_parameters(q, q_prime))
    throw std::invalid_argument("incomparable parameters: queries differ in length, window, "
                                "or gap constraints");
  if (!is_satisfiable(q) || !is_satisfiable(q_prime))
    throw std::invalid_argument("containment requires satisfiable queries");

  TypeSet needed = types(q);
  const TypeSet more = types(q_prime);
  needed.insert(more.begin(), more.end());
  if (!std::includes(alphabet.begin(), alphabet.end(), needed.begin(), needed.end()))
    throw std::invalid_argument("alphabet must cover the types of both queries");
  if (!options.force && alphabet.size() < sufficient_alphabet_size(q))
    throw std::invalid_argument("alphabet below sufficiency bound (" +
                                std::to_string(sufficient_alphabet_size(q)) +
                                "); pass force to override");

  return find_homomorphism(q_prime, q).has_value();
}

bool equivalent(const Query& q, const Query& q_prime) {
  if (!same_parameters(q, q_prime))
    throw std::invalid_argument("incomparable parameters: queries differ in length, window, "
                                "or gap constraints");
  return canonical_form(q) == canonical_form(q_prime);
}

}  // namespace traceq::analysis
