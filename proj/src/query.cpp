#include "traceq/query.hpp"

#include <algorithm>
#include <cctype>

namespace traceq {

bool valid_token(std::string_view text) {
  if (text.empty()) return false;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) return false;
    if (kReservedChars.find(c) != std::string_view::npos) return false;
  }
  return true;
}

TypeSymbol::TypeSymbol(std::string token) : token_(std::move(token)) {
  if (!valid_token(token_))
    throw std::invalid_argument("bad type token: '" + token_ + "'");
}

Variable::Variable(std::string name) : name_(std::move(name)) {
  if (!valid_token(name_))
    throw std::invalid_argument("bad variable name: '" + name_ + "'");
}

bool GapConstraint::operator<(const GapConstraint& o) const {
  if (position != o.position) return position < o.position;
  if (range != o.range) return range < o.range;
  if (min_gap != o.min_gap) return min_gap < o.min_gap;
  return max_gap < o.max_gap;
}

Trace::Trace(std::vector<TypeSymbol> items) : items_(std::move(items)) {
  if (items_.empty()) throw std::invalid_argument("empty trace");
}

TypeSet Trace::types() const { return TypeSet(items_.begin(), items_.end()); }

Sample::Sample(std::vector<Trace> traces) : traces_(std::move(traces)) {
  if (traces_.empty()) throw std::invalid_argument("empty sample");
}

TypeSet Sample::types() const {
  TypeSet out;
  for (const Trace& t : traces_)
    out.insert(t.items().begin(), t.items().end());
  return out;
}

Query::Query(std::vector<Symbol> symbols, Bound window, std::vector<GapConstraint> constraints)
    : symbols_(std::move(symbols)), window_(window), constraints_(std::move(constraints)) {
  if (symbols_.empty()) throw std::invalid_argument("empty query string");
}

std::size_t Query::max_typeset_size() const {
  std::size_t k = 0;
  for (const Symbol& s : symbols_)
    if (s.is_typeset()) k = std::max(k, s.as_typeset().size());
  return k;
}

std::set<Variable> vars(const Query& q) {
  std::set<Variable> out;
  for (const Symbol& s : q.symbols())
    if (s.is_var()) out.insert(s.as_var());
  return out;
}

TypeSet types(const Query& q) {
  TypeSet out;
  for (const Symbol& s : q.symbols())
    if (s.is_typeset()) out.insert(s.as_typeset().begin(), s.as_typeset().end());
  return out;
}

std::set<TypeSet> typesets(const Query& q) {
  std::set<TypeSet> out;
  for (const Symbol& s : q.symbols())
    if (s.is_typeset()) out.insert(s.as_typeset());
  return out;
}

bool all_singleton_symbols(const Query& q) {
  return q.max_typeset_size() <= 1;
}

bool all_local_gaps(const Query& q) {
  std::set<std::size_t> seen;
  for (const GapConstraint& c : q.constraints()) {
    if (c.range != 1) return false;
    if (!seen.insert(c.position).second) return false;
  }
  return true;
}

QueryClass query_class(const Query& q) {
  bool singletons = all_singleton_symbols(q);
  bool local = all_local_gaps(q);
  if (singletons && local) return QueryClass::SWG;
  if (singletons) return QueryClass::SWGG;
  if (local) return QueryClass::DSWG;
  return QueryClass::GENERAL;
}

Embedding::Embedding(std::vector<std::size_t> positions) : positions_(std::move(positions)) {
  for (std::size_t i = 0; i < positions_.size(); ++i) {
    if (positions_[i] == 0) throw std::invalid_argument("embedding positions are 1-based");
    if (i > 0 && positions_[i - 1] >= positions_[i])
      throw std::invalid_argument("embedding not strictly increasing");
  }
}

bool same_parameters(const Query& a, const Query& b) {
  if (a.length() != b.length() || a.window() != b.window()) return false;
  auto ca = a.constraints();
  auto cb = b.constraints();
  std::sort(ca.begin(), ca.end());
  std::sort(cb.begin(), cb.end());
  return ca == cb;
}

}  // namespace traceq
