#include "traceq/discovery.hpp"

#include <algorithm>
#include <random>

#include "traceq/analysis.hpp"
#include "traceq/core.hpp"
#include "traceq/matcher.hpp"

namespace traceq::discovery {

namespace {

const std::set<TypeSet> kEmptyLayer;

std::vector<TypeSet> subsets_of_size(const TypeSet& alphabet, std::size_t k) {
  std::vector<TypeSymbol> pool(alphabet.begin(), alphabet.end());
  std::vector<TypeSet> out;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  if (k == 0 || k > pool.size()) return out;
  while (true) {
    TypeSet s;
    for (std::size_t i : idx) s.insert(pool[i]);
    out.push_back(std::move(s));
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == pool.size() - k + (i - 1)) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

}  // namespace

const std::set<TypeSet>& DeltaFamily::layer(std::size_t i) const {
  auto it = layers.find(i);
  return it == layers.end() ? kEmptyLayer : it->second;
}

std::size_t DeltaFamily::total() const {
  std::size_t n = 0;
  for (const auto& [_, sets] : layers) n += sets.size();
  return n;
}

Rational typeset_support(const TypeSet& delta, const Sample& sample) {
  if (delta.empty()) throw std::invalid_argument("empty typeset");
  std::int64_t hits = 0;
  for (const Trace& t : sample.traces()) {
    bool contains = std::any_of(delta.begin(), delta.end(), [&t](const TypeSymbol& g) {
      return std::find(t.items().begin(), t.items().end(), g) != t.items().end();
    });
    if (contains) ++hits;
  }
  return Rational(hits, static_cast<std::int64_t>(sample.size()));
}

DeltaFamily compute_delta(const Sample& sample, const SupportThreshold& threshold, std::size_t k,
                          const TypeSet& alphabet) {
  const TypeSet pool = alphabet.empty() ? sample.types() : alphabet;
  if (k < 1 || k + 1 > pool.size())
    throw std::invalid_argument("k must lie in [1, alphabet size - 1]");

  DeltaFamily out;
  std::vector<TypeSet> failed;
  for (std::size_t size = k; size >= 1; --size) {
    for (TypeSet& candidate : subsets_of_size(pool, size)) {
      bool pruned = std::any_of(failed.begin(), failed.end(), [&candidate](const TypeSet& f) {
        return std::includes(f.begin(), f.end(), candidate.begin(), candidate.end());
      });
      if (pruned) continue;
      if (typeset_support(candidate, sample) >= threshold.value())
        out.layers[size].insert(std::move(candidate));
      else
        failed.push_back(std::move(candidate));
    }
  }
  return out;
}

Query most_general_query(const DiscoveryParams& params) {
  if (params.length < 1) throw std::invalid_argument("query length must be positive");
  std::vector<Symbol> symbols;
  symbols.reserve(params.length);
  for (std::size_t i = 1; i <= params.length; ++i)
    symbols.push_back(Symbol::var(Variable("x" + std::to_string(i))));
  Query q(std::move(symbols), params.window, params.constraints);
  require_valid(q);
  return q;
}

DiscoveryOutcome discover(const Sample& sample, const SupportThreshold& threshold,
                          const DiscoveryParams& params) {
  Query current = most_general_query(params);  // validates the parameters

  if (params.max_typeset_size < 1) throw std::invalid_argument("k must be at least 1");
  if (params.max_typeset_size > 1 && !all_local_gaps(current))
    throw std::invalid_argument("k must be 1 when generalised gap constraints are present");
  if (!analysis::is_satisfiable(current))
    throw std::invalid_argument("unsatisfiable gap constraints: no query with these parameters "
                                "has a model");

  DiscoveryOutcome outcome;
  if (matcher::support(current, sample) < threshold.value()) return outcome;

  const DeltaFamily delta = compute_delta(sample, threshold, params.max_typeset_size);

  // first-occurrence position of every variable of the most general string
  std::vector<Variable> visit;
  std::map<Variable, std::size_t> position;
  for (std::size_t i = 0; i < current.length(); ++i) {
    visit.push_back(current.symbols()[i].as_var());
    position.emplace(visit.back(), i);
  }

  std::optional<std::mt19937_64> rng;
  if (params.order.kind == ChoicePolicy::Kind::Seeded) {
    rng.emplace(params.order.seed);
    std::shuffle(visit.begin(), visit.end(), *rng);
  }

  std::vector<Variable> available;
  for (const Variable& x : visit) {
    ++outcome.main_loop_iterations;
    bool replaced = false;
    for (std::size_t i = 1; i <= params.max_typeset_size && !replaced; ++i) {
      std::vector<Symbol> candidates;
      for (const TypeSet& s : delta.layer(i)) candidates.push_back(Symbol::typeset(s));
      if (i == 1) {
        std::vector<Variable> avail = available;
        std::sort(avail.begin(), avail.end(), [&position](const Variable& a, const Variable& b) {
          return position.at(a) < position.at(b);
        });
        for (const Variable& y : avail) candidates.push_back(Symbol::var(y));
      }
      if (rng) std::shuffle(candidates.begin(), candidates.end(), *rng);

      for (const Symbol& y : candidates) {
        Query attempt = replace_symbol(current, x, y);
        if (matcher::support(attempt, sample) >= threshold.value()) {
          current = std::move(attempt);
          replaced = true;
          break;
        }
      }
    }
    if (!replaced) available.push_back(x);
  }

  outcome.query = std::move(current);
  return outcome;
}

}  // namespace traceq::discovery
