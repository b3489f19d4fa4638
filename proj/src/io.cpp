#include "traceq/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <sstream>

#include <json.hpp>

#include "traceq/core.hpp"

namespace traceq::io {

namespace {

bool is_ws(char c) { return c == ' ' || c == '\t' || c == '\r'; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_ws(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_ws(s.back())) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) {
      if (start < text.size()) lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, nl - start));
    start = nl + 1;
  }
  for (auto& l : lines)
    if (!l.empty() && l.back() == '\r') l.remove_suffix(1);
  return lines;
}

std::uint64_t parse_nat(std::string_view text, std::size_t line, std::size_t col,
                        const char* what) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size())
    throw ParseError(line, col, std::string("expected ") + what + ", got '" + std::string(text) + "'");
  return value;
}

Bound parse_bound(std::string_view text, std::size_t line, std::size_t col, const char* what) {
  if (trim(text) == "inf") return Bound::infinity();
  return Bound(parse_nat(trim(text), line, col, what));
}

std::vector<std::pair<std::string_view, std::size_t>> split_list(std::string_view value,
                                                                 std::size_t base_col) {
  std::vector<std::pair<std::string_view, std::size_t>> out;
  std::size_t start = 0;
  while (start <= value.size()) {
    std::size_t comma = value.find(',', start);
    std::size_t end = comma == std::string_view::npos ? value.size() : comma;
    std::string_view piece = value.substr(start, end - start);
    std::size_t lead = 0;
    while (lead < piece.size() && is_ws(piece[lead])) ++lead;
    out.emplace_back(trim(piece), base_col + start + lead);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

GapConstraint parse_gap_entry(std::string_view piece, std::size_t index, std::size_t line,
                              std::size_t col) {
  std::size_t colon = piece.find(':');
  if (colon == std::string_view::npos)
    throw ParseError(line, col, "gap entry must look like min:max");
  std::uint64_t lo = parse_nat(trim(piece.substr(0, colon)), line, col, "gap minimum");
  Bound hi = parse_bound(piece.substr(colon + 1), line, col + colon + 1, "gap maximum");
  return GapConstraint{index, 1, lo, hi};
}

GapConstraint parse_constraint_entry(std::string_view piece, std::size_t length, std::size_t line,
                                     std::size_t col) {
  std::size_t plus = piece.find('+');
  std::size_t colon = piece.find(':');
  std::size_t dots = piece.find("..");
  if (plus == std::string_view::npos || colon == std::string_view::npos ||
      dots == std::string_view::npos || !(plus < colon && colon < dots))
    throw ParseError(line, col, "constraint entry must look like j+r:min..max");
  std::size_t j = parse_nat(trim(piece.substr(0, plus)), line, col, "position j");
  std::size_t r = parse_nat(trim(piece.substr(plus + 1, colon - plus - 1)), line, col + plus + 1,
                            "range r");
  if (r < 1) throw ParseError(line, col + plus + 1, "range must be at least 1");
  if (j < 1 || j + r > length)
    throw ParseError(line, col, "j+r out of range: needs 1 <= j and j+r <= " +
                                    std::to_string(length));
  std::uint64_t lo =
      parse_nat(trim(piece.substr(colon + 1, dots - colon - 1)), line, col + colon + 1, "minimum");
  Bound hi = parse_bound(piece.substr(dots + 2), line, col + dots + 2, "maximum");
  return GapConstraint{j, r, lo, hi};
}

std::vector<Symbol> parse_symbols(std::string_view value, std::size_t line, std::size_t base_col) {
  std::vector<Symbol> out;
  std::size_t i = 0;
  auto fail = [&](std::size_t at, const std::string& msg) -> ParseError {
    return ParseError(line, base_col + at, msg);
  };
  while (i < value.size()) {
    if (is_ws(value[i])) {
      ++i;
      continue;
    }
    if (value[i] == '{') {
      std::size_t close = value.find('}', i);
      if (close == std::string_view::npos) throw fail(i, "unterminated typeset");
      TypeSet set;
      for (auto [member, col] : split_list(value.substr(i + 1, close - i - 1), base_col + i + 1)) {
        if (member.empty()) throw fail(col - base_col, "empty typeset member");
        if (!valid_token(member))
          throw fail(col - base_col, "bad type token: '" + std::string(member) + "'");
        set.insert(TypeSymbol(std::string(member)));
      }
      if (set.empty()) throw fail(i, "empty typeset");
      out.push_back(Symbol::typeset(std::move(set)));
      i = close + 1;
      if (i < value.size() && !is_ws(value[i])) throw fail(i, "expected whitespace after typeset");
      continue;
    }
    std::size_t end = i;
    while (end < value.size() && !is_ws(value[end])) ++end;
    std::string_view token = value.substr(i, end - i);
    if (token[0] == '?') {
      std::string_view name = token.substr(1);
      if (!valid_token(name)) throw fail(i, "bad variable name: '" + std::string(token) + "'");
      out.push_back(Symbol::var(Variable(std::string(name))));
    } else {
      for (std::size_t off = 0; off < token.size(); ++off)
        if (kReservedChars.find(token[off]) != std::string_view::npos)
          throw fail(i + off, std::string("reserved character '") + token[off] + "' in token");
      out.push_back(Symbol::type(TypeSymbol(std::string(token))));
    }
    i = end;
  }
  if (out.empty()) throw fail(0, "empty query string");
  return out;
}

}  // namespace

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                         ": " + what),
      line_(line),
      column_(column) {}

Sample parse_traces(std::string_view text) {
  std::vector<Trace> traces;
  const auto lines = split_lines(text);
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    std::string_view line = lines[ln];
    if (line.empty()) continue;
    if (line.front() == '#') continue;
    std::vector<TypeSymbol> items;
    std::size_t i = 0;
    while (i < line.size()) {
      if (line[i] == ' ' || line[i] == '\t') {
        ++i;
        continue;
      }
      std::size_t end = i;
      while (end < line.size() && line[end] != ' ' && line[end] != '\t') ++end;
      std::string_view token = line.substr(i, end - i);
      for (std::size_t off = 0; off < token.size(); ++off)
        if (kReservedChars.find(token[off]) != std::string_view::npos)
          throw ParseError(ln + 1, i + off + 1,
                           std::string("reserved character '") + token[off] + "' in token");
      items.push_back(TypeSymbol(std::string(token)));
      i = end;
    }
    if (items.empty()) throw ParseError(ln + 1, 1, "empty trace (whitespace-only line)");
    traces.push_back(Trace(std::move(items)));
  }
  if (traces.empty()) throw ParseError(lines.size(), 1, "empty sample");
  return Sample(std::move(traces));
}

Query parse_query(std::string_view text) {
  std::optional<std::vector<Symbol>> symbols;
  std::optional<Bound> window;
  std::optional<std::pair<std::string_view, std::pair<std::size_t, std::size_t>>> gaps_raw;
  std::optional<std::pair<std::string_view, std::pair<std::size_t, std::size_t>>> constraints_raw;
  std::size_t string_line = 1;

  const auto lines = split_lines(text);
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    std::string_view line = lines[ln];
    std::string_view body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    std::size_t colon = line.find(':');
    if (colon == std::string_view::npos)
      throw ParseError(ln + 1, 1, "expected a 'section: value' line");
    std::string_view key = trim(line.substr(0, colon));
    std::string_view value = line.substr(colon + 1);
    std::size_t value_col = colon + 2;

    if (key == "string") {
      if (symbols) throw ParseError(ln + 1, 1, "duplicate section 'string'");
      symbols = parse_symbols(value, ln + 1, value_col);
      string_line = ln + 1;
    } else if (key == "window") {
      if (window) throw ParseError(ln + 1, 1, "duplicate section 'window'");
      window = parse_bound(value, ln + 1, value_col, "window size");
      if (window->is_finite() && window->value() == 0)
        throw ParseError(ln + 1, value_col, "window must be positive");
    } else if (key == "gaps") {
      if (gaps_raw) throw ParseError(ln + 1, 1, "duplicate section 'gaps'");
      gaps_raw = {value, {ln + 1, value_col}};
    } else if (key == "constraints") {
      if (constraints_raw) throw ParseError(ln + 1, 1, "duplicate section 'constraints'");
      constraints_raw = {value, {ln + 1, value_col}};
    } else {
      throw ParseError(ln + 1, 1, "unknown section '" + std::string(key) + "'");
    }
  }

  if (!symbols) throw ParseError(lines.size(), 1, "missing section 'string'");
  if (!window) throw ParseError(lines.size(), 1, "missing section 'window'");
  const std::size_t length = symbols->size();

  std::vector<GapConstraint> constraints;
  if (gaps_raw) {
    auto [value, where] = *gaps_raw;
    auto pieces = split_list(value, where.second);
    if (pieces.size() != length - 1 || length == 1)
      throw ParseError(where.first, where.second,
                       "gaps arity mismatch: expected " + std::to_string(length - 1) +
                           " entries for a string of length " + std::to_string(length));
    for (std::size_t i = 0; i < pieces.size(); ++i)
      constraints.push_back(parse_gap_entry(pieces[i].first, i + 1, where.first, pieces[i].second));
  }
  if (constraints_raw) {
    auto [value, where] = *constraints_raw;
    for (auto [piece, col] : split_list(value, where.second))
      constraints.push_back(parse_constraint_entry(piece, length, where.first, col));
  }

  Query q(std::move(*symbols), *window, std::move(constraints));
  auto violations = validate_query(q);
  if (!violations.empty()) {
    std::ostringstream msg;
    msg << "ill-formed query:";
    for (const Violation& v : violations) msg << " [" << v.field << ": " << v.rule << "]";
    throw ParseError(string_line, 1, msg.str());
  }
  return q;
}

std::string symbol_text(const Symbol& s) {
  if (s.is_var()) return "?" + s.as_var().name();
  const TypeSet& set = s.as_typeset();
  if (set.size() == 1) return set.begin()->token();
  std::string out = "{";
  bool first = true;
  for (const TypeSymbol& t : set) {
    if (!first) out += ",";
    out += t.token();
    first = false;
  }
  return out + "}";
}

std::string trace_text(const Trace& t) {
  std::string out;
  for (std::size_t i = 0; i < t.items().size(); ++i) {
    if (i) out += " ";
    out += t.items()[i].token();
  }
  return out;
}

namespace {

std::string bound_text(const Bound& b) {
  return b.is_finite() ? std::to_string(b.value()) : "inf";
}

bool is_full_local_tuple(const Query& q) {
  if (q.constraints().size() != q.length() - 1) return false;
  std::vector<GapConstraint> cs = q.constraints();
  std::sort(cs.begin(), cs.end());
  for (std::size_t i = 0; i < cs.size(); ++i)
    if (cs[i].position != i + 1 || cs[i].range != 1) return false;
  return true;
}

}  // namespace

std::string serialize_query(const Query& q) {
  const Query canon = canonical_form(q);
  std::ostringstream out;
  out << "string:";
  for (const Symbol& s : canon.symbols()) out << " " << symbol_text(s);
  out << "\nwindow: " << bound_text(canon.window()) << "\n";

  if (canon.constraints().empty()) return out.str();
  if (is_full_local_tuple(canon)) {
    out << "gaps:";
    for (std::size_t i = 0; i < canon.constraints().size(); ++i) {
      const GapConstraint& c = canon.constraints()[i];
      out << (i ? ", " : " ") << c.min_gap << ":" << bound_text(c.max_gap);
    }
    out << "\n";
  } else {
    out << "constraints:";
    for (std::size_t i = 0; i < canon.constraints().size(); ++i) {
      const GapConstraint& c = canon.constraints()[i];
      out << (i ? ", " : " ") << c.position << "+" << c.range << ":" << c.min_gap << ".."
          << bound_text(c.max_gap);
    }
    out << "\n";
  }
  return out.str();
}

std::vector<GapConstraint> parse_gap_list(std::string_view text, std::size_t length) {
  std::vector<GapConstraint> out;
  auto pieces = split_list(text, 1);
  if (pieces.size() != length - 1 || length == 1)
    throw ParseError(1, 1, "gaps arity mismatch: expected " + std::to_string(length - 1) +
                               " entries for a string of length " + std::to_string(length));
  for (std::size_t i = 0; i < pieces.size(); ++i)
    out.push_back(parse_gap_entry(pieces[i].first, i + 1, 1, pieces[i].second));
  return out;
}

std::vector<GapConstraint> parse_constraint_list(std::string_view text, std::size_t length) {
  std::vector<GapConstraint> out;
  for (auto [piece, col] : split_list(text, 1))
    out.push_back(parse_constraint_entry(piece, length, 1, col));
  return out;
}

std::string write_report(const Report& report) {
  nlohmann::ordered_json j;
  j["command"] = report.command;
  nlohmann::ordered_json inputs = nlohmann::ordered_json::object();
  for (const auto& [key, value] : report.inputs) inputs[key] = value;
  j["inputs"] = inputs;
  j["verdict"] = report.verdict;
  if (report.witness) {
    nlohmann::ordered_json w;
    w["embedding"] = report.witness->embedding.positions();
    nlohmann::ordered_json variables = nlohmann::ordered_json::object();
    for (const auto& [var, type] : report.witness->var_assign)
      variables["?" + var.name()] = type.token();
    w["variables"] = variables;
    nlohmann::ordered_json choices = nlohmann::ordered_json::object();
    for (const auto& [pos, type] : report.witness->choice)
      choices[std::to_string(pos)] = type.token();
    w["choices"] = choices;
    j["witness"] = w;
  }
  if (report.support) j["support"] = report.support->str();
  if (report.query) j["query"] = serialize_query(*report.query);
  if (report.result_json) j["result"] = nlohmann::ordered_json::parse(*report.result_json);
  return j.dump(2) + "\n";
}

}  // namespace traceq::io
