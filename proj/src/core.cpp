#include "traceq/core.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace traceq {

std::vector<Violation> validate_query(const Query& q) {
  std::vector<Violation> out;
  const std::size_t l = q.length();

  if (q.window().is_finite() && q.window().value() < l)
    out.push_back({"window", "window < length of query string"});

  for (std::size_t i = 0; i < q.symbols().size(); ++i) {
    const Symbol& s = q.symbols()[i];
    if (s.is_typeset() && s.as_typeset().empty())
      out.push_back({"symbols[" + std::to_string(i + 1) + "]", "empty typeset"});
  }

  for (std::size_t i = 0; i < q.constraints().size(); ++i) {
    const GapConstraint& c = q.constraints()[i];
    const std::string field = "constraints[" + std::to_string(i + 1) + "]";
    if (c.range < 1) {
      out.push_back({field, "range < 1"});
      continue;
    }
    if (c.position < 1 || c.position >= l) {
      out.push_back({field, "position outside [1, length-1]"});
      continue;
    }
    if (c.position + c.range > l) out.push_back({field, "position + range > length"});
    if (c.max_gap.is_finite() && c.min_gap > c.max_gap.value())
      out.push_back({field, "min gap exceeds max gap"});
  }
  return out;
}

void require_valid(const Query& q) {
  auto violations = validate_query(q);
  if (violations.empty()) return;
  std::ostringstream msg;
  msg << "ill-formed query:";
  for (const Violation& v : violations) msg << " [" << v.field << ": " << v.rule << "]";
  throw std::invalid_argument(msg.str());
}

std::set<std::size_t> positions_of(const Query& q, const Symbol& z) {
  std::set<std::size_t> out;
  for (std::size_t i = 0; i < q.symbols().size(); ++i)
    if (q.symbols()[i] == z) out.insert(i + 1);
  return out;
}

Query replace_symbol(const Query& q, const Variable& x, const Symbol& y) {
  const Symbol target = Symbol::var(x);
  bool found = false;
  std::vector<Symbol> symbols;
  symbols.reserve(q.length());
  for (const Symbol& s : q.symbols()) {
    if (s == target) {
      symbols.push_back(y);
      found = true;
    } else {
      symbols.push_back(s);
    }
  }
  if (!found) throw std::invalid_argument("unknown variable: ?" + x.name());
  return Query(std::move(symbols), q.window(), q.constraints());
}

Query canonical_form(const Query& q) {
  std::map<Variable, Variable> renaming;
  std::vector<Symbol> symbols;
  symbols.reserve(q.length());
  for (const Symbol& s : q.symbols()) {
    if (s.is_var()) {
      auto it = renaming.find(s.as_var());
      if (it == renaming.end()) {
        Variable fresh("v" + std::to_string(renaming.size() + 1));
        it = renaming.emplace(s.as_var(), fresh).first;
      }
      symbols.push_back(Symbol::var(it->second));
    } else {
      symbols.push_back(s);  // TypeSet is ordered, already canonical
    }
  }
  std::vector<GapConstraint> constraints = q.constraints();
  std::sort(constraints.begin(), constraints.end());
  return Query(std::move(symbols), q.window(), std::move(constraints));
}

}  // namespace traceq
