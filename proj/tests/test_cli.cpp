#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

using nlohmann::json;

namespace {

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(TRACEQ_BIN) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string scratch_dir() {
  static std::string dir = [] {
    char tmpl[] = "/tmp/traceq_cli_XXXXXX";
    REQUIRE(mkdtemp(tmpl) != nullptr);
    return std::string(tmpl);
  }();
  return dir;
}

std::string write_file(const std::string& name, const std::string& content) {
  const std::string path = scratch_dir() + "/" + name;
  std::ofstream f(path);
  f << content;
  REQUIRE(f.good());
  return path;
}

// Just enough JSON-Schema (draft-07 subset) to enforce the shipped report
// schema: type, required, properties, additionalProperties, enum, items,
// minimum.
bool conforms(const json& value, const json& schema, std::string& why) {
  if (schema.is_object() && schema.empty()) return true;
  if (schema.contains("enum")) {
    for (const auto& candidate : schema["enum"])
      if (candidate == value) return true;
    why = "value " + value.dump() + " not in enum";
    return false;
  }
  if (schema.contains("type")) {
    const std::string type = schema["type"];
    const bool ok = (type == "object" && value.is_object()) ||
                    (type == "array" && value.is_array()) ||
                    (type == "string" && value.is_string()) ||
                    (type == "integer" && value.is_number_integer()) ||
                    (type == "number" && value.is_number()) ||
                    (type == "boolean" && value.is_boolean());
    if (!ok) {
      why = "expected " + type + ", got " + value.dump();
      return false;
    }
  }
  if (value.is_number_integer() && schema.contains("minimum") &&
      value.get<long long>() < schema["minimum"].get<long long>()) {
    why = "below minimum: " + value.dump();
    return false;
  }
  if (value.is_object()) {
    if (schema.contains("required"))
      for (const auto& key : schema["required"])
        if (!value.contains(key.get<std::string>())) {
          why = "missing required key " + key.get<std::string>();
          return false;
        }
    for (auto it = value.begin(); it != value.end(); ++it) {
      const json* sub = nullptr;
      if (schema.contains("properties") && schema["properties"].contains(it.key()))
        sub = &schema["properties"][it.key()];
      else if (schema.contains("additionalProperties")) {
        if (schema["additionalProperties"].is_boolean()) {
          if (!schema["additionalProperties"].get<bool>()) {
            why = "unexpected key " + it.key();
            return false;
          }
        } else {
          sub = &schema["additionalProperties"];
        }
      }
      if (sub && !conforms(it.value(), *sub, why)) {
        why = "at key " + it.key() + ": " + why;
        return false;
      }
    }
  }
  if (value.is_array() && schema.contains("items"))
    for (const auto& element : value)
      if (!conforms(element, schema["items"], why)) return false;
  return true;
}

void check_report(const std::string& text) {
  static json schema = [] {
    std::ifstream f(std::string(TRACEQ_DOCS_DIR) + "/report-schema.json");
    REQUIRE(f.good());
    return json::parse(f);
  }();
  json report = json::parse(text);
  std::string why;
  const bool ok = conforms(report, schema, why);
  CAPTURE(why);
  CAPTURE(text);
  CHECK(ok);
}

const std::string kQ1 =
    "string: a a a a a a\nwindow: 10\nconstraints: 1+3:7..7, 2+3:6..6, 5+1:0..0\n";
const std::string kQ1Free =
    "string: a a a a a a\nwindow: inf\nconstraints: 1+3:7..7, 2+3:6..6, 5+1:0..0\n";
const std::string kExample3 =
    "string: ?x1 {a,b} ?x1 ?x2 c ?x3 {a,b} ?x1\nwindow: 25\n"
    "gaps: 0:1, 2:inf, 3:inf, 0:5, 0:5, 1:5, 1:2\n";

}  // namespace

TEST_CASE("sat reports unsatisfiable with exit 1") {
  auto q1 = write_file("q1.tq", kQ1);
  auto r = run_cli("sat " + q1);
  CHECK(r.exit_code == 1);
  CHECK(r.out == "unsatisfiable\n");

  auto free_q = write_file("q1free.tq", kQ1Free);
  auto ok = run_cli("sat " + free_q);
  CHECK(ok.exit_code == 0);
  CHECK(ok.out == "satisfiable\n");

  auto js = run_cli("sat --json " + q1);
  CHECK(js.exit_code == 1);
  check_report(js.out);
  CHECK(json::parse(js.out)["verdict"] == "unsatisfiable");
}

TEST_CASE("match finds the Example 3 witness") {
  auto q = write_file("ex3.tq", kExample3);
  auto t = write_file("ex3.traces", "c a b b c a b a c a b a c b c b b a c\n");
  auto r = run_cli("match " + q + " " + t);
  CHECK(r.exit_code == 0);
  CHECK(r.out == "trace 1: match\n");

  auto js = run_cli("match --witness --json " + q + " " + t);
  CHECK(js.exit_code == 0);
  check_report(js.out);
  json report = json::parse(js.out);
  CHECK(report["verdict"] == "match");
  CHECK(report["witness"]["embedding"] == json::array({1, 2, 5, 9, 13, 14, 16, 19}));
  CHECK(report["witness"]["variables"]["?x1"] == "c");

  auto miss = write_file("miss.traces", "a b\n");
  auto neg = run_cli("match " + q + " " + miss);
  CHECK(neg.exit_code == 1);
}

TEST_CASE("minlen honours --ignore-window") {
  auto q1 = write_file("q1.tq", kQ1);
  auto r = run_cli("minlen --ignore-window " + q1);
  CHECK(r.exit_code == 0);
  CHECK(r.out == "11\n");
  auto blocked = run_cli("minlen " + q1);
  CHECK(blocked.exit_code == 1);
  CHECK(blocked.out == "infeasible\n");
  auto js = run_cli("minlen --ignore-window --json " + q1);
  check_report(js.out);
  CHECK(json::parse(js.out)["result"] == 11);
}

TEST_CASE("mintrace constructs an 11-letter model") {
  auto q = write_file("q1free.tq", kQ1Free);
  auto r = run_cli("mintrace " + q + " --filler b --varfill a");
  CHECK(r.exit_code == 0);
  std::istringstream tokens(r.out);
  int count = 0;
  std::string tok;
  while (tokens >> tok) ++count;
  CHECK(count == 11);

  auto q1 = write_file("q1.tq", kQ1);
  auto blocked = run_cli("mintrace " + q1 + " --filler b --varfill a");
  CHECK(blocked.exit_code == 1);
  CHECK(blocked.out == "unsatisfiable\n");
}

TEST_CASE("contains enforces the alphabet bound") {
  auto narrow =
      write_file("narrow.tq", "string: a {b,c} {b,c}\nwindow: 3\ngaps: 0:0, 0:0\n");
  auto wide =
      write_file("wide.tq", "string: {a,b} {b,c} {b,c}\nwindow: 3\ngaps: 0:0, 0:0\n");
  auto yes = run_cli("contains " + narrow + " " + wide + " --alphabet a,b,c");
  CHECK(yes.exit_code == 0);
  CHECK(yes.out == "contained\n");
  auto no = run_cli("contains " + wide + " " + narrow + " --alphabet a,b,c");
  CHECK(no.exit_code == 1);
  CHECK(no.out == "not-contained\n");
  // |{a,b}| = 2 is below the bound 3 for the narrow query
  auto small = run_cli("contains " + narrow + " " + wide + " --alphabet a,b");
  CHECK(small.exit_code == 2);
  auto forced = run_cli("contains " + narrow + " " + wide + " --alphabet a,b --force");
  CHECK(forced.exit_code == 0);
  auto js = run_cli("contains --json " + narrow + " " + wide + " --alphabet a,b,c");
  check_report(js.out);
}

TEST_CASE("equiv compares canonical forms") {
  auto a = write_file("eqa.tq", "string: ?x a ?x ?y\nwindow: 4\n");
  auto b = write_file("eqb.tq", "string: ?z a ?z ?w\nwindow: 4\n");
  auto c = write_file("eqc.tq", "string: ?z a ?w ?w\nwindow: 4\n");
  CHECK(run_cli("equiv " + a + " " + b).exit_code == 0);
  CHECK(run_cli("equiv " + a + " " + c).exit_code == 1);
}

TEST_CASE("support prints an exact fraction") {
  auto q = write_file("supp.tq", "string: a\nwindow: 1\n");
  auto t = write_file("supp.traces", "a b b\nb b\n");
  auto r = run_cli("support " + q + " " + t);
  CHECK(r.exit_code == 0);
  CHECK(r.out == "1/2\n");
  auto js = run_cli("support --json " + q + " " + t);
  check_report(js.out);
  CHECK(json::parse(js.out)["support"] == "1/2");
}

TEST_CASE("delta prints the layered family") {
  auto t = write_file("ex10.traces", "a b b\na c c\n");
  auto r = run_cli("delta " + t + " --supp 1 --k 2");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "1: a\n2: {a,b} {a,c} {b,c}\n");
  auto js = run_cli("delta --json " + t + " --supp 1 --k 2");
  check_report(js.out);
  json report = json::parse(js.out);
  CHECK(report["result"]["1"] == json::array({json::array({"a"})}));

  auto fig1 = write_file("fig1.traces", "c a b b c a c b\nc b b b a c c b\nc c b b c c c b\n");
  auto walk = run_cli("delta " + fig1 + " --supp 1.0 --k 2 --alphabet a,b,c,d");
  CHECK(walk.exit_code == 0);
  CHECK(walk.out == "1: b c\n2: {a,b} {a,c} {b,c} {b,d} {c,d}\n");
}

TEST_CASE("discover outputs the Example 10 query") {
  auto t = write_file("ex10.traces", "a b b\na c c\n");
  auto r = run_cli("discover " + t + " --supp 1 --len 3 --window 3 --gaps 0:0,0:0 --k 2");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "string: a {b,c} {b,c}\nwindow: 3\ngaps: 0:0, 0:0\n");

  auto seeded = run_cli("discover " + t +
                        " --supp 1 --len 3 --window 3 --gaps 0:0,0:0 --k 2 --order seed:7");
  CHECK(seeded.exit_code == 0);
  CHECK(seeded.out == r.out);

  auto js = run_cli("discover --json " + t +
                    " --supp 1 --len 3 --window 3 --gaps 0:0,0:0 --k 2");
  check_report(js.out);
  CHECK(json::parse(js.out)["verdict"] == "descriptive-query");

  auto thin = write_file("thin.traces", "a\n");
  auto none = run_cli("discover " + thin + " --supp 1 --len 2 --window 2 --k 1");
  CHECK(none.exit_code == 1);
  CHECK(none.out == "no-descriptive-query\n");
  auto njs = run_cli("discover --json " + thin + " --supp 1 --len 2 --window 2 --k 1");
  check_report(njs.out);
  CHECK(json::parse(njs.out)["verdict"] == "no-descriptive-query");
}

TEST_CASE("usage and input errors exit with 2") {
  CHECK(run_cli("frobnicate").exit_code == 2);
  CHECK(run_cli("sat").exit_code == 2);                       // missing argument
  CHECK(run_cli("sat /nonexistent/path.tq").exit_code == 2);  // unreadable file
  auto bad = write_file("bad.tq", "string: a b c\nwindow: 2\n");
  CHECK(run_cli("sat " + bad).exit_code == 2);  // window < length
  auto t = write_file("ex10.traces", "a b b\na c c\n");
  CHECK(run_cli("discover " + t + " --supp 0 --len 2 --window 2 --k 1").exit_code == 2);
  CHECK(run_cli("discover " + t + " --supp 1 --len 2 --window 2 --k 1 --order bogus").exit_code ==
        2);
}

TEST_CASE("reads from standard input") {
  auto q = write_file("stdin.tq", "string: a\nwindow: 1\n");
  const std::string cmd =
      std::string(TRACEQ_BIN) + " support " + q + " - <<'EOF' 2>/dev/null\na\nb\nEOF";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[256];
  std::string out;
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  int status = pclose(pipe);
  CHECK(WEXITSTATUS(status) == 0);
  CHECK(out == "1/2\n");
}

TEST_CASE("help exits cleanly") {
  CHECK(run_cli("--help").exit_code == 0);
  CHECK(run_cli("discover --help").exit_code == 0);
}
