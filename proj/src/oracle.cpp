#include "traceq/oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>

namespace traceq::oracle {

namespace {

constexpr std::int64_t kInfSum = std::numeric_limits<std::int64_t>::max() / 4;

// Window/gap/symbol check for one embedding, straight from the definition.
bool embedding_witnesses(const Query& q, const Trace& t, const std::vector<std::size_t>& e) {
  if (q.window().is_finite() && e.back() - e.front() + 1 > q.window().value()) return false;
  for (const GapConstraint& c : q.constraints()) {
    const std::uint64_t gap = e[c.position + c.range - 1] - 1 - e[c.position - 1];
    if (gap < c.min_gap) return false;
    if (c.max_gap.is_finite() && gap > c.max_gap.value()) return false;
  }
  std::vector<std::pair<Variable, TypeSymbol>> bound;
  for (std::size_t i = 0; i < q.length(); ++i) {
    const Symbol& s = q.symbols()[i];
    const TypeSymbol& letter = t.at(e[i]);
    if (s.is_typeset()) {
      if (!s.as_typeset().count(letter)) return false;
    } else {
      bool seen = false;
      for (const auto& [v, image] : bound) {
        if (v == s.as_var()) {
          if (!(image == letter)) return false;
          seen = true;
          break;
        }
      }
      if (!seen) bound.emplace_back(s.as_var(), letter);
    }
  }
  return true;
}

// Steps `idx` to the next l-combination of {1..n} in lexicographic order.
bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
  const std::size_t l = idx.size();
  std::size_t i = l;
  while (i > 0 && idx[i - 1] == n - l + i) --i;
  if (i == 0) return false;
  ++idx[i - 1];
  for (std::size_t j = i; j < l; ++j) idx[j] = idx[j - 1] + 1;
  return true;
}

template <typename Fn>
bool for_each_embedding(std::size_t n, std::size_t l, Fn&& fn) {
  if (l == 0 || l > n) return false;
  std::vector<std::size_t> idx(l);
  for (std::size_t i = 0; i < l; ++i) idx[i] = i + 1;
  do {
    if (fn(idx)) return true;
  } while (next_combination(idx, n));
  return false;
}

// Enumerates all traces over `alphabet` of length 1..max_length.
template <typename Fn>
bool for_each_trace(const TypeSet& alphabet, std::size_t max_length, Fn&& fn) {
  const std::vector<TypeSymbol> pool(alphabet.begin(), alphabet.end());
  if (pool.empty()) return false;
  for (std::size_t len = 1; len <= max_length; ++len) {
    std::vector<std::size_t> digits(len, 0);
    while (true) {
      std::vector<TypeSymbol> items;
      items.reserve(len);
      for (std::size_t d : digits) items.push_back(pool[d]);
      if (fn(Trace(std::move(items)))) return true;
      std::size_t i = len;
      while (i > 0 && digits[i - 1] + 1 == pool.size()) digits[--i] = 0;
      if (i == 0) break;
      ++digits[i - 1];
    }
  }
  return false;
}

TypeSymbol fresh_symbol(const TypeSet& taken) {
  std::size_t n = 0;
  while (true) {
    TypeSymbol candidate("~" + std::to_string(n));
    if (!taken.count(candidate)) return candidate;
    ++n;
  }
}

}  // namespace

bool brute_matches(const Query& q, const Trace& t) {
  return for_each_embedding(t.size(), q.length(), [&](const std::vector<std::size_t>& e) {
    return embedding_witnesses(q, t, e);
  });
}

std::vector<Embedding> brute_witness_embeddings(const Query& q, const Trace& t) {
  std::vector<Embedding> out;
  for_each_embedding(t.size(), q.length(), [&](const std::vector<std::size_t>& e) {
    if (embedding_witnesses(q, t, e)) out.push_back(Embedding(e));
    return false;
  });
  return out;
}

bool brute_satisfiable(const Query& q, std::optional<std::size_t> length_bound) {
  std::size_t limit;
  if (q.window().is_finite())
    limit = q.window().value();
  else if (length_bound)
    limit = *length_bound;
  else
    throw std::invalid_argument("bound required: infinite window");

  TypeSet alphabet = types(q);
  alphabet.insert(fresh_symbol(alphabet));
  return for_each_trace(alphabet, limit, [&](const Trace& t) { return brute_matches(q, t); });
}

bool lemma5_check(const Query& q) {
  const std::size_t l = q.length();
  if (l == 1) return true;

  struct Link {
    std::size_t from, to;
    std::int64_t lo, hi;  // c- - r + 1 and c+ - r + 1 (hi may be infinite)
  };
  std::vector<Link> links;
  for (const GapConstraint& c : q.constraints()) {
    const std::int64_t r = static_cast<std::int64_t>(c.range);
    links.push_back({c.position, c.position + c.range,
                     static_cast<std::int64_t>(std::min<std::uint64_t>(c.min_gap, kInfSum)) - r + 1,
                     c.max_gap.is_finite()
                         ? static_cast<std::int64_t>(std::min<std::uint64_t>(c.max_gap.value(), kInfSum)) - r + 1
                         : kInfSum});
  }
  for (std::size_t j = 1; j < l; ++j) links.push_back({j, j + 1, 0, kInfSum});

  // best chain sums between every pair of endpoints, memoized by span
  std::vector<std::vector<std::int64_t>> max_lo(l + 1, std::vector<std::int64_t>(l + 1, -kInfSum));
  std::vector<std::vector<std::int64_t>> min_hi(l + 1, std::vector<std::int64_t>(l + 1, kInfSum));
  for (std::size_t p = 1; p <= l; ++p) {
    max_lo[p][p] = 0;
    min_hi[p][p] = 0;
  }
  for (std::size_t start = l; start >= 1; --start) {
    for (const Link& link : links) {
      if (link.from != start) continue;
      for (std::size_t end = link.to; end <= l; ++end) {
        if (max_lo[link.to][end] != -kInfSum)
          max_lo[start][end] =
              std::max(max_lo[start][end], link.lo + max_lo[link.to][end]);
        if (min_hi[link.to][end] != kInfSum && link.hi != kInfSum)
          min_hi[start][end] = std::min(min_hi[start][end], link.hi + min_hi[link.to][end]);
      }
    }
    if (start == 1) break;
  }

  for (std::size_t p = 1; p <= l; ++p)
    for (std::size_t r = p + 1; r <= l; ++r) {
      if (max_lo[p][r] == -kInfSum) continue;
      if (q.window().is_finite() &&
          static_cast<std::int64_t>(l) + max_lo[p][r] >
              static_cast<std::int64_t>(q.window().value()))
        return false;  // condition (i)
      if (max_lo[p][r] > min_hi[p][r]) return false;  // condition (ii)
    }
  return true;
}

std::set<Trace> brute_model_set(const Query& q, const TypeSet& alphabet, std::size_t max_length) {
  std::set<Trace> out;
  for_each_trace(alphabet, max_length, [&](const Trace& t) {
    if (brute_matches(q, t)) out.insert(t);
    return false;
  });
  return out;
}

bool brute_contained(const Query& q, const Query& q_prime, const TypeSet& alphabet) {
  if (!same_parameters(q, q_prime))
    throw std::invalid_argument("incomparable parameters");
  if (!q.window().is_finite()) throw std::invalid_argument("bound required: infinite window");
  bool contained = true;
  for_each_trace(alphabet, q.window().value(), [&](const Trace& t) {
    if (brute_matches(q, t) && !brute_matches(q_prime, t)) {
      contained = false;
      return true;
    }
    return false;
  });
  return contained;
}

std::vector<Query> enumerate_queries(const discovery::DiscoveryParams& params,
                                     const discovery::DeltaFamily& delta) {
  std::vector<TypeSet> sets;
  for (const auto& [size, layer] : delta.layers)
    for (const TypeSet& s : layer)
      if (size <= params.max_typeset_size) sets.push_back(s);

  std::vector<Query> out;
  std::vector<Symbol> prefix;
  // restricted-growth variable naming keeps one representative per
  // isomorphism class
  auto rec = [&](auto&& self, std::size_t used_vars) -> void {
    if (prefix.size() == params.length) {
      out.emplace_back(prefix, params.window, params.constraints);
      return;
    }
    for (const TypeSet& s : sets) {
      prefix.push_back(Symbol::typeset(s));
      self(self, used_vars);
      prefix.pop_back();
    }
    for (std::size_t v = 1; v <= used_vars + 1; ++v) {
      prefix.push_back(Symbol::var(Variable("v" + std::to_string(v))));
      self(self, std::max(used_vars, v));
      prefix.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

namespace {

// Def.-style homomorphism check: h(from) = to position-wise.
bool hom_exists(const Query& from, const Query& to) {
  const auto& src = from.symbols();
  const auto& dst = to.symbols();
  if (src.size() != dst.size()) return false;
  for (std::size_t i = 0; i < src.size(); ++i) {
    if (src[i].is_var()) continue;
    if (!dst[i].is_typeset()) return false;
    const TypeSet& a = src[i].as_typeset();
    const TypeSet& b = dst[i].as_typeset();
    if (b.empty() || !std::includes(a.begin(), a.end(), b.begin(), b.end())) return false;
  }
  for (std::size_t i = 0; i < src.size(); ++i) {
    if (!src[i].is_var()) continue;
    std::size_t occurrences = 0;
    for (std::size_t j = 0; j < src.size(); ++j) {
      if (src[j] != src[i]) continue;
      ++occurrences;
      if (dst[j] != dst[i]) return false;
    }
    if (occurrences >= 2 && dst[i].is_typeset() && dst[i].as_typeset().size() != 1) return false;
  }
  return true;
}

// Isomorphism via the full-index partial-isomorphism criterion: equal
// position profiles, typeset positions agree exactly.
bool isomorphic(const Query& a, const Query& b) {
  const auto& sa = a.symbols();
  const auto& sb = b.symbols();
  if (sa.size() != sb.size()) return false;
  for (std::size_t i = 0; i < sa.size(); ++i) {
    if (sa[i].is_typeset() != sb[i].is_typeset()) return false;
    if (sa[i].is_typeset() && sa[i] != sb[i]) return false;
    for (std::size_t j = i + 1; j < sa.size(); ++j)
      if ((sa[i] == sa[j]) != (sb[i] == sb[j])) return false;
  }
  return true;
}

Rational brute_support(const Query& q, const Sample& sample) {
  std::int64_t hits = 0;
  for (const Trace& t : sample.traces())
    if (brute_matches(q, t)) ++hits;
  return Rational(hits, static_cast<std::int64_t>(sample.size()));
}

}  // namespace

bool is_descriptive(const Query& q, const Sample& sample, const SupportThreshold& threshold,
                    const discovery::DiscoveryParams& params) {
  if (brute_support(q, sample) < threshold.value()) return false;

  // naive support-satisfying typeset family over the sample's types
  const TypeSet gamma = sample.types();
  discovery::DeltaFamily family;
  std::vector<TypeSymbol> pool(gamma.begin(), gamma.end());
  std::vector<TypeSet> current{TypeSet{}};
  for (std::size_t size = 1; size <= params.max_typeset_size; ++size) {
    std::vector<TypeSet> next;
    for (const TypeSet& base : current)
      for (const TypeSymbol& g : pool) {
        if (!base.empty() && !(*base.rbegin() < g)) continue;
        TypeSet grown = base;
        grown.insert(g);
        next.push_back(std::move(grown));
      }
    for (const TypeSet& s : next) {
      std::int64_t hits = 0;
      for (const Trace& t : sample.traces()) {
        bool contains = std::any_of(s.begin(), s.end(), [&t](const TypeSymbol& g) {
          return std::find(t.items().begin(), t.items().end(), g) != t.items().end();
        });
        if (contains) ++hits;
      }
      if (Rational(hits, static_cast<std::int64_t>(sample.size())) >= threshold.value())
        family.layers[size].insert(s);
    }
    current = std::move(next);
  }

  for (const Query& candidate : enumerate_queries(params, family)) {
    if (isomorphic(q, candidate)) continue;
    if (!(brute_support(candidate, sample) >= threshold.value())) continue;
    if (hom_exists(q, candidate)) return false;
  }
  return true;
}

}  // namespace traceq::oracle
