#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "traceq/analysis.hpp"
#include "traceq/core.hpp"
#include "traceq/discovery.hpp"
#include "traceq/io.hpp"
#include "traceq/matcher.hpp"
#include "traceq/oracle.hpp"

namespace traceq::cli {

namespace {

std::string read_input(const std::string& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin),
                       std::istreambuf_iterator<char>());
  }
  std::ifstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot read '" + path + "'");
  return std::string(std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>());
}

TypeSet parse_alphabet(const std::string& spec) {
  TypeSet out;
  std::stringstream ss(spec);
  std::string piece;
  while (std::getline(ss, piece, ',')) {
    while (!piece.empty() && (piece.front() == ' ' || piece.front() == '\t')) piece.erase(0, 1);
    while (!piece.empty() && (piece.back() == ' ' || piece.back() == '\t')) piece.pop_back();
    if (!piece.empty()) out.insert(TypeSymbol(piece));
  }
  if (out.empty()) throw std::runtime_error("empty alphabet");
  return out;
}

Bound parse_window_flag(const std::string& text) {
  if (text == "inf") return Bound::infinity();
  std::uint64_t v = std::stoull(text);
  if (v == 0) throw std::runtime_error("window must be positive");
  return Bound(v);
}

discovery::ChoicePolicy parse_order_flag(const std::string& text) {
  if (text == "first") return discovery::ChoicePolicy::first_occurrence();
  if (text.rfind("seed:", 0) == 0)
    return discovery::ChoicePolicy::seeded(std::stoull(text.substr(5)));
  throw std::runtime_error("order must be 'first' or 'seed:N'");
}

void emit(const io::Report& report, bool json, const std::string& text_line) {
  if (json)
    std::cout << io::write_report(report);
  else if (!text_line.empty())
    std::cout << text_line << "\n";
}

std::string witness_lines(const Witness& w) {
  std::ostringstream out;
  out << "  embedding:";
  for (std::size_t p : w.embedding.positions()) out << " " << p;
  if (!w.var_assign.empty()) {
    out << "\n  variables:";
    for (const auto& [var, type] : w.var_assign) out << " ?" << var.name() << "=" << type.token();
  }
  if (!w.choice.empty()) {
    out << "\n  choices:";
    for (const auto& [pos, type] : w.choice) out << " " << pos << "=" << type.token();
  }
  return out.str();
}

int cmd_match(const std::string& query_path, const std::string& traces_path, bool want_witness,
              bool json) {
  const Query q = io::parse_query(read_input(query_path));
  const Sample sample = io::parse_traces(read_input(traces_path));

  bool all = true;
  std::optional<Witness> first_witness;
  nlohmann::ordered_json per_trace = nlohmann::ordered_json::array();
  std::ostringstream text;
  for (std::size_t i = 0; i < sample.traces().size(); ++i) {
    auto witness = matcher::find_witness(q, sample.traces()[i]);
    if (!witness) all = false;
    if (witness && !first_witness) first_witness = witness;
    nlohmann::ordered_json row;
    row["trace"] = i + 1;
    row["match"] = witness.has_value();
    if (witness && want_witness) row["embedding"] = witness->embedding.positions();
    per_trace.push_back(row);
    text << "trace " << (i + 1) << ": " << (witness ? "match" : "no-match");
    if (witness && want_witness) text << "\n" << witness_lines(*witness);
    if (i + 1 < sample.traces().size()) text << "\n";
  }

  io::Report report("match", all ? "match" : "no-match");
  report.inputs = {{"query", query_path}, {"traces", traces_path}};
  if (want_witness && first_witness) report.witness = first_witness;
  report.result_json = per_trace.dump();
  emit(report, json, text.str());
  return all ? 0 : 1;
}

int cmd_sat(const std::string& query_path, bool json) {
  const Query q = io::parse_query(read_input(query_path));
  const bool sat = analysis::is_satisfiable(q);
  io::Report report("sat", sat ? "satisfiable" : "unsatisfiable");
  report.inputs = {{"query", query_path}};
  emit(report, json, sat ? "satisfiable" : "unsatisfiable");
  return sat ? 0 : 1;
}

int cmd_minlen(const std::string& query_path, bool ignore_window, bool json) {
  const Query q = io::parse_query(read_input(query_path));
  const auto length = analysis::min_match_length(q, ignore_window);
  io::Report report("minlen", length ? "feasible" : "infeasible");
  report.inputs = {{"query", query_path}};
  if (length) report.result_json = std::to_string(*length);
  emit(report, json, length ? std::to_string(*length) : "infeasible");
  return length ? 0 : 1;
}

int cmd_mintrace(const std::string& query_path, const std::string& filler,
                 const std::string& var_fill, bool json) {
  const Query q = io::parse_query(read_input(query_path));
  const auto trace = analysis::construct_min_trace(q, TypeSymbol(filler), TypeSymbol(var_fill));
  io::Report report("mintrace", trace ? "constructed" : "unsatisfiable");
  report.inputs = {{"query", query_path}, {"filler", filler}, {"varfill", var_fill}};
  if (trace) report.result_json = nlohmann::json(io::trace_text(*trace)).dump();
  emit(report, json, trace ? io::trace_text(*trace) : "unsatisfiable");
  return trace ? 0 : 1;
}

int cmd_contains(const std::string& q1_path, const std::string& q2_path,
                 const std::string& alphabet_spec, bool force, bool json) {
  const Query q1 = io::parse_query(read_input(q1_path));
  const Query q2 = io::parse_query(read_input(q2_path));
  const TypeSet alphabet = parse_alphabet(alphabet_spec);

  for (const Query* q : {&q1, &q2})
    for (const TypeSet& s : typesets(*q))
      if (s == alphabet)
        std::cerr << "warning: a typeset equals the whole alphabet; a wildcard would do\n";
  if (query_class(q1) == QueryClass::GENERAL)
    std::cerr << "warning: general-class query (typesets and ranges combined); the alphabet "
                 "sufficiency bound is heuristic\n";

  const bool contained = analysis::contained_in(q1, q2, alphabet, {force});
  io::Report report("contains", contained ? "contained" : "not-contained");
  report.inputs = {{"q1", q1_path}, {"q2", q2_path}, {"alphabet", alphabet_spec}};
  emit(report, json, contained ? "contained" : "not-contained");
  return contained ? 0 : 1;
}

int cmd_equiv(const std::string& q1_path, const std::string& q2_path, bool json) {
  const Query q1 = io::parse_query(read_input(q1_path));
  const Query q2 = io::parse_query(read_input(q2_path));
  const bool eq = analysis::equivalent(q1, q2);
  io::Report report("equiv", eq ? "equivalent" : "not-equivalent");
  report.inputs = {{"q1", q1_path}, {"q2", q2_path}};
  emit(report, json, eq ? "equivalent" : "not-equivalent");
  return eq ? 0 : 1;
}

int cmd_support(const std::string& query_path, const std::string& traces_path, bool json) {
  const Query q = io::parse_query(read_input(query_path));
  const Sample sample = io::parse_traces(read_input(traces_path));
  const Rational value = matcher::support(q, sample);
  io::Report report("support", "ok");
  report.inputs = {{"query", query_path}, {"traces", traces_path}};
  report.support = value;
  emit(report, json, value.str());
  return 0;
}

int cmd_delta(const std::string& traces_path, const std::string& supp, std::size_t k,
              const std::string& alphabet_spec, bool json) {
  const Sample sample = io::parse_traces(read_input(traces_path));
  const SupportThreshold threshold{Rational::parse(supp)};
  const TypeSet alphabet = alphabet_spec.empty() ? TypeSet{} : parse_alphabet(alphabet_spec);
  const auto family = discovery::compute_delta(sample, threshold, k, alphabet);

  std::ostringstream text;
  nlohmann::ordered_json layers = nlohmann::ordered_json::object();
  bool first = true;
  for (const auto& [size, sets] : family.layers) {
    if (!first) text << "\n";
    first = false;
    text << size << ":";
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const TypeSet& s : sets) {
      text << " " << io::symbol_text(Symbol::typeset(s));
      nlohmann::ordered_json members = nlohmann::ordered_json::array();
      for (const TypeSymbol& t : s) members.push_back(t.token());
      arr.push_back(members);
    }
    layers[std::to_string(size)] = arr;
  }
  io::Report report("delta", "ok");
  report.inputs = {{"traces", traces_path}, {"supp", supp}, {"k", std::to_string(k)}};
  report.result_json = layers.dump();
  emit(report, json, text.str());
  return 0;
}

int cmd_discover(const std::string& traces_path, const std::string& supp, std::size_t length,
                 const std::string& window_spec, const std::string& gaps_spec,
                 const std::string& constraints_spec, std::size_t k, const std::string& order_spec,
                 bool json) {
  const Sample sample = io::parse_traces(read_input(traces_path));
  const SupportThreshold threshold{Rational::parse(supp)};

  discovery::DiscoveryParams params;
  params.length = length;
  params.window = parse_window_flag(window_spec);
  if (!gaps_spec.empty()) {
    auto gaps = io::parse_gap_list(gaps_spec, length);
    params.constraints.insert(params.constraints.end(), gaps.begin(), gaps.end());
  }
  if (!constraints_spec.empty()) {
    auto extra = io::parse_constraint_list(constraints_spec, length);
    params.constraints.insert(params.constraints.end(), extra.begin(), extra.end());
  }
  params.max_typeset_size = k;
  params.order = parse_order_flag(order_spec);

  const auto outcome = discovery::discover(sample, threshold, params);
  io::Report report("discover", outcome.query ? "descriptive-query" : "no-descriptive-query");
  report.inputs = {{"traces", traces_path}, {"supp", supp},
                   {"len", std::to_string(length)},    {"window", window_spec},
                   {"k", std::to_string(k)},           {"order", order_spec}};
  if (outcome.query) report.query = outcome.query;
  std::string text = outcome.query ? io::serialize_query(*outcome.query) : "no-descriptive-query\n";
  if (!text.empty() && text.back() == '\n') text.pop_back();
  emit(report, json, text);
  return outcome.query ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"subsequence queries over event traces: matching, analysis, and discovery"};
  app.require_subcommand(1);

  std::string query_path, q2_path, traces_path;
  std::string alphabet_spec, filler, var_fill, supp, window_spec, gaps_spec, constraints_spec;
  std::string order_spec = "first";
  std::size_t k = 1, length = 1;
  bool want_witness = false, json = false, ignore_window = false, force = false;

  auto* match = app.add_subcommand("match", "does the query match every trace in the file");
  match->add_option("query", query_path)->required();
  match->add_option("traces", traces_path)->required();
  match->add_flag("--witness", want_witness, "show the least witness per trace");
  match->add_flag("--json", json);

  auto* sat = app.add_subcommand("sat", "is the query satisfiable");
  sat->add_option("query", query_path)->required();
  sat->add_flag("--json", json);

  auto* minlen = app.add_subcommand("minlen", "length of the shortest matching trace");
  minlen->add_option("query", query_path)->required();
  minlen->add_flag("--ignore-window", ignore_window);
  minlen->add_flag("--json", json);

  auto* mintrace = app.add_subcommand("mintrace", "construct a shortest matching trace");
  mintrace->add_option("query", query_path)->required();
  mintrace->add_option("--filler", filler, "type used to fill gaps")->required();
  mintrace->add_option("--varfill", var_fill, "type assigned to variables")->required();
  mintrace->add_flag("--json", json);

  auto* contains = app.add_subcommand("contains", "is q1 contained in q2 over the alphabet");
  contains->add_option("q1", query_path)->required();
  contains->add_option("q2", q2_path)->required();
  contains->add_option("--alphabet", alphabet_spec, "comma-separated types")->required();
  contains->add_flag("--force", force, "skip the alphabet sufficiency check");
  contains->add_flag("--json", json);

  auto* equiv = app.add_subcommand("equiv", "are the queries equivalent");
  equiv->add_option("q1", query_path)->required();
  equiv->add_option("q2", q2_path)->required();
  equiv->add_flag("--json", json);

  auto* support = app.add_subcommand("support", "fraction of traces matching the query");
  support->add_option("query", query_path)->required();
  support->add_option("traces", traces_path)->required();
  support->add_flag("--json", json);

  auto* delta = app.add_subcommand("delta", "support-satisfying typesets, layered by size");
  delta->add_option("traces", traces_path)->required();
  delta->add_option("--supp", supp, "support threshold (rational or decimal)")->required();
  delta->add_option("--k", k, "maximal typeset size")->required();
  delta->add_option("--alphabet", alphabet_spec, "explicit alphabet (default: sample types)");
  delta->add_flag("--json", json);

  auto* discover = app.add_subcommand("discover", "compute a descriptive query for the sample");
  discover->add_option("traces", traces_path)->required();
  discover->add_option("--supp", supp)->required();
  discover->add_option("--len", length, "query string length")->required();
  discover->add_option("--window", window_spec, "window size or 'inf'")->required();
  discover->add_option("--gaps", gaps_spec, "local gap tuple min:max, ...");
  discover->add_option("--constraints", constraints_spec, "generalised constraints j+r:min..max");
  discover->add_option("--k", k)->required();
  discover->add_option("--order", order_spec, "'first' (default) or 'seed:N'");
  discover->add_flag("--json", json);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (match->parsed()) return cmd_match(query_path, traces_path, want_witness, json);
    if (sat->parsed()) return cmd_sat(query_path, json);
    if (minlen->parsed()) return cmd_minlen(query_path, ignore_window, json);
    if (mintrace->parsed()) return cmd_mintrace(query_path, filler, var_fill, json);
    if (contains->parsed()) return cmd_contains(query_path, q2_path, alphabet_spec, force, json);
    if (equiv->parsed()) return cmd_equiv(query_path, q2_path, json);
    if (support->parsed()) return cmd_support(query_path, traces_path, json);
    if (delta->parsed()) return cmd_delta(traces_path, supp, k, alphabet_spec, json);
    if (discover->parsed())
      return cmd_discover(traces_path, supp, length, window_spec, gaps_spec, constraints_spec, k,
                          order_spec, json);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace traceq::cli
