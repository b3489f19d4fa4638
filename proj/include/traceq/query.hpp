#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "traceq/rational.hpp"

namespace traceq {

/// Characters that may not occur in type tokens or variable names because
/// the text formats use them as punctuation.
inline constexpr std::string_view kReservedChars = "{}?;,:#";

bool valid_token(std::string_view text);

/// One event type from the alphabet. Ordered by token so that typesets have
/// a canonical member order for free.
class TypeSymbol {
 public:
  explicit TypeSymbol(std::string token);
  const std::string& token() const { return token_; }

  bool operator==(const TypeSymbol& o) const { return token_ == o.token_; }
  bool operator!=(const TypeSymbol& o) const { return token_ != o.token_; }
  bool operator<(const TypeSymbol& o) const { return token_ < o.token_; }

 private:
  std::string token_;
};

/// A wildcard. External form is "?name"; the sigil is not stored.
class Variable {
 public:
  explicit Variable(std::string name);
  const std::string& name() const { return name_; }

  bool operator==(const Variable& o) const { return name_ == o.name_; }
  bool operator!=(const Variable& o) const { return name_ != o.name_; }
  bool operator<(const Variable& o) const { return name_ < o.name_; }

 private:
  std::string name_;
};

using TypeSet = std::set<TypeSymbol>;

/// Natural number or infinity; used for window sizes and gap upper bounds.
/// Infinity compares greater than every finite value.
class Bound {
 public:
  Bound(std::uint64_t value) : value_(value) {}
  static Bound infinity() { return Bound(Inf{}); }

  bool is_finite() const { return value_.has_value(); }
  std::uint64_t value() const {
    if (!value_) throw std::logic_error("value() on infinite bound");
    return *value_;
  }

  bool operator==(const Bound& o) const { return value_ == o.value_; }
  bool operator!=(const Bound& o) const { return value_ != o.value_; }
  bool operator<(const Bound& o) const {
    if (!value_) return false;
    if (!o.value_) return true;
    return *value_ < *o.value_;
  }
  bool operator<=(const Bound& o) const { return !(o < *this); }

 private:
  struct Inf {};
  explicit Bound(Inf) : value_(std::nullopt) {}
  std::optional<std::uint64_t> value_;
};

/// One position of a query string: a variable or a disjunctive typeset.
/// Plain types are singleton typesets.
class Symbol {
 public:
  static Symbol var(Variable v) { return Symbol(std::move(v)); }
  static Symbol typeset(TypeSet s) { return Symbol(std::move(s)); }
  static Symbol type(TypeSymbol t) { return Symbol(TypeSet{std::move(t)}); }

  bool is_var() const { return std::holds_alternative<Variable>(value_); }
  bool is_typeset() const { return !is_var(); }
  const Variable& as_var() const { return std::get<Variable>(value_); }
  const TypeSet& as_typeset() const { return std::get<TypeSet>(value_); }

  bool operator==(const Symbol& o) const { return value_ == o.value_; }
  bool operator!=(const Symbol& o) const { return value_ != o.value_; }
  bool operator<(const Symbol& o) const { return value_ < o.value_; }

 private:
  explicit Symbol(Variable v) : value_(std::move(v)) {}
  explicit Symbol(TypeSet s) : value_(std::move(s)) {}
  std::variant<Variable, TypeSet> value_;
};

/// Bounds the letters strictly between embedded positions j and j+r:
/// min_gap <= e(j+r) - 1 - e(j) <= max_gap. Local constraints are r == 1.
struct GapConstraint {
  std::size_t position;  // j, 1-based
  std::size_t range;     // r >= 1
  std::uint64_t min_gap;
  Bound max_gap;

  bool operator==(const GapConstraint& o) const {
    return position == o.position && range == o.range && min_gap == o.min_gap &&
           max_gap == o.max_gap;
  }
  bool operator<(const GapConstraint& o) const;
};

/// Non-empty sequence of types.
class Trace {
 public:
  explicit Trace(std::vector<TypeSymbol> items);
  const std::vector<TypeSymbol>& items() const { return items_; }
  std::size_t size() const { return items_.size(); }
  /// 1-based access, matching embedding positions.
  const TypeSymbol& at(std::size_t pos) const { return items_.at(pos - 1); }
  TypeSet types() const;

  bool operator==(const Trace& o) const { return items_ == o.items_; }
  bool operator<(const Trace& o) const { return items_ < o.items_; }

 private:
  std::vector<TypeSymbol> items_;
};

/// Non-empty bag of traces; duplicates are counted.
class Sample {
 public:
  explicit Sample(std::vector<Trace> traces);
  const std::vector<Trace>& traces() const { return traces_; }
  std::size_t size() const { return traces_.size(); }
  /// Union of the types occurring in the sample.
  TypeSet types() const;

 private:
  std::vector<Trace> traces_;
};

/// A query: string of symbols, global window, and a multiset of gap
/// constraints. Construction only requires a non-empty string; everything
/// else is reported by validate_query so that syntactically odd queries can
/// still be inspected.
class Query {
 public:
  Query(std::vector<Symbol> symbols, Bound window, std::vector<GapConstraint> constraints);

  const std::vector<Symbol>& symbols() const { return symbols_; }
  std::size_t length() const { return symbols_.size(); }
  Bound window() const { return window_; }
  const std::vector<GapConstraint>& constraints() const { return constraints_; }

  /// Largest typeset cardinality in the string (0 when all positions are
  /// variables).
  std::size_t max_typeset_size() const;

  bool operator==(const Query& o) const {
    return symbols_ == o.symbols_ && window_ == o.window_ && constraints_ == o.constraints_;
  }
  bool operator!=(const Query& o) const { return !(*this == o); }

 private:
  std::vector<Symbol> symbols_;
  Bound window_;
  std::vector<GapConstraint> constraints_;
};

std::set<Variable> vars(const Query& q);
TypeSet types(const Query& q);
std::set<TypeSet> typesets(const Query& q);

/// True when every typeset in the string is a singleton.
bool all_singleton_symbols(const Query& q);
/// True when every constraint has range 1 and no pair j carries more than
/// one constraint.
bool all_local_gaps(const Query& q);

enum class QueryClass { SWG, SWGG, DSWG, GENERAL };

/// Most specific class; SWG is the intersection of the singleton-symbols
/// and local-gaps predicates.
QueryClass query_class(const Query& q);

/// Strictly increasing positions into a trace, 1-based.
class Embedding {
 public:
  explicit Embedding(std::vector<std::size_t> positions);
  const std::vector<std::size_t>& positions() const { return positions_; }
  std::size_t size() const { return positions_.size(); }
  std::size_t at(std::size_t i) const { return positions_.at(i - 1); }

  bool operator==(const Embedding& o) const { return positions_ == o.positions_; }

 private:
  std::vector<std::size_t> positions_;
};

/// Proof of a match: consistent variable assignment, one chosen member per
/// typeset position, and the embedding.
struct Witness {
  std::map<Variable, TypeSymbol> var_assign;
  std::map<std::size_t, TypeSymbol> choice;  // typeset position -> picked member
  Embedding embedding;
};

/// True when both queries have the same length, window, and gap-constraint
/// multiset; the comparability precondition shared by containment,
/// homomorphism, and equivalence.
bool same_parameters(const Query& a, const Query& b);

}  // namespace traceq
