#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "qhist/demos.hpp"
#include "qhist/report.hpp"
#include "qhist/scenario.hpp"
#include "test_util.hpp"

using namespace qhist;
using testutil::code_of;

namespace {

std::string data(const char* name) { return std::string(QHIST_TEST_DATA) + "/" + name; }

const Field* field(const ReportEntry& e, const std::string& name) {
  for (const auto& f : e.fields)
    if (f.name == name) return &f;
  return nullptr;
}

double real_field(const ReportEntry& e, const std::string& name) {
  const Field* f = field(e, name);
  REQUIRE(f);
  REQUIRE(std::holds_alternative<double>(f->value));
  return std::get<double>(f->value);
}

Error error_of(const std::string& json_text) {
  try {
    parse_scenario(json_text);
  } catch (const Error& e) {
    return e;
  }
  FAIL("expected an error");
  return Error(Errc::InternalConsistency, "");
}

}  // namespace

TEST_CASE("polarizer scenario loads and evaluates") {
  const Scenario s = load_scenario(data("polarizer.json"));
  CHECK(s.name == "polarizer");
  CHECK(s.dimension() == 2);
  CHECK(s.space.names() == std::vector<std::string>{"a", "b", "abar"});
  REQUIRE(s.histories.size() == 2);
  CHECK(s.find_history("through")->expr == parse("a & b & abar"));
  CHECK(s.find_history("missing") == nullptr);
  REQUIRE(s.queries.size() == 7);
  CHECK(s.queries[3].precision == 6);
  CHECK(s.queries[5].target == std::vector<std::string>{"a", "b", "abar"});

  const EvalReport r = run_scenario(s);
  CHECK(r.exit_code() == 0);
  REQUIRE(r.entries.size() == 7);
  CHECK(std::abs(real_field(r.entries[0], "certainty") - 0.25) < 1e-12);
  CHECK(std::abs(real_field(r.entries[2], "probability") - 0.125) < 1e-12);
  CHECK(std::abs(real_field(r.entries[3], "probability") - 0.25) < 1e-12);
  CHECK(std::abs(real_field(r.entries[4], "certainty")) < 1e-12);
  for (const auto& e : r.entries) {
    CHECK(e.status() == "ok");
    for (const auto& c : e.checks) CHECK(c.difference < 1e-10);
  }
}

TEST_CASE("double slit scenario") {
  const Scenario s = load_scenario(data("double_slit.json"));
  const EvalReport r = run_scenario(s);
  REQUIRE(r.entries.size() == 4);
  const ReportEntry& loops = r.entries[2];
  REQUIRE(field(loops, "loops"));
  CHECK(std::get<std::int64_t>(field(loops, "loops")->value) == 4);
  REQUIRE(loops.tables.size() == 1);
  CHECK(loops.tables[0].rows.size() == 4);
  // tr(I) = -4/27 for this geometry.
  const ReportEntry& inter = r.entries[1];
  const Complex tr_i = std::get<Complex>(field(inter, "tr(I)")->value);
  CHECK(std::abs(tr_i - Complex(-4.0 / 27.0)) < 1e-12);
  CHECK(std::abs(real_field(r.entries[3], "probability") - 1.0 / 27.0) < 1e-12);
}

TEST_CASE("alternative endpoints report both values with a warning") {
  const EvalReport r = run_scenario(load_scenario(data("alt_endpoint.json")));
  REQUIRE(r.entries.size() == 2);
  CHECK(r.entries[0].status() == "ok");
  CHECK(r.entries[0].warnings.size() == 1);
  CHECK(r.exit_code() == 0);
}

TEST_CASE("evaluation failures become entry status") {
  const EvalReport r = run_scenario(load_scenario(data("forbidden.json")));
  REQUIRE(r.entries.size() == 2);
  CHECK(r.entries[0].status() == "ok");
  CHECK(r.entries[1].error == Errc::ForbiddenHistory);
  CHECK(r.exit_code() == 3);
}

TEST_CASE("invalid rays are validation errors naming the event") {
  CHECK(code_of([] { load_scenario(data("bad_ray.json")); }) == Errc::ValidationError);
  const Error e = error_of(R"({"dimension": 2, "events": {"zero": {"components": [0, 0]}}})");
  CHECK(std::string(e.what()).find("zero") != std::string::npos);
  CHECK(code_of([] { parse_scenario(R"({"dimension": 2, "events": {"v": {"components": [1, 1]}}})"); }) ==
        Errc::ValidationError);
  CHECK(code_of([] { parse_scenario(R"({"dimension": 3, "events": {"v": {"angle": 0.1}}})"); }) ==
        Errc::ValidationError);
  CHECK(code_of([] { parse_scenario(R"({"dimension": 2, "events": {"v": {"basis": 3}}})"); }) ==
        Errc::ValidationError);
  // complex components as [re, im]
  const Scenario s = parse_scenario(
      R"({"dimension": 2, "events": {"v": {"components": [[0.6, 0], [0, 0.8]]}}})");
  CHECK(std::abs(s.space.ray("v")[1] - Complex(0.0, 0.8)) < 1e-15);
}

TEST_CASE("grammar errors keep their position") {
  const Error e = error_of(
      R"({"dimension": 2, "events": {"a": {"basis": 1}, "b": {"basis": 2}}, "histories": {"h": "a & & b"}})");
  CHECK(e.code() == Errc::ValidationError);
  REQUIRE(e.position());
  CHECK(*e.position() == 4);
  CHECK(code_of([] { load_scenario(data("bad_syntax.json")); }) == Errc::ValidationError);
  CHECK(code_of([] {
          parse_scenario(R"({"dimension": 2, "events": {"a": {"basis": 1}}, "histories": {"h": "a & q"}})");
        }) == Errc::ValidationError);
}

TEST_CASE("schema errors") {
  CHECK(code_of([] { load_scenario(data("bad_schema.json")); }) == Errc::SchemaError);
  CHECK(code_of([] { parse_scenario("not json"); }) == Errc::SchemaError);
  CHECK(code_of([] { parse_scenario("[]"); }) == Errc::SchemaError);
  CHECK(code_of([] { parse_scenario(R"({"events": {}})"); }) == Errc::SchemaError);
  CHECK(code_of([] { parse_scenario(R"({"dimension": 2, "events": {}, "extra": 1})"); }) == Errc::SchemaError);
  CHECK(code_of([] { parse_scenario(R"({"dimension": 2, "events": {"a": {"basis": 1, "angle": 0}}})"); }) ==
        Errc::SchemaError);

  const Error e = error_of(R"({"dimension": 2, "events": {"a": {"basis": 1}}, "queries": [{"kind": "certainty"}]})");
  CHECK(e.code() == Errc::SchemaError);
  CHECK(std::string(e.what()).find("/queries/0/target") != std::string::npos);

  CHECK(code_of([] { load_scenario(data("does_not_exist.json")); }) == Errc::FileNotFound);
}

TEST_CASE("query validation") {
  const char* base = R"({"dimension": 2, "events": {"a": {"basis": 1}, "b": {"basis": 2}}, "queries": [%s]})";
  auto with = [&](const std::string& q) {
    std::string t = base;
    t.replace(t.find("%s"), 2, q);
    return t;
  };
  CHECK(code_of([&] { parse_scenario(with(R"({"kind": "frobnicate", "target": "a"})")); }) ==
        Errc::ValidationError);
  CHECK(code_of([&] { parse_scenario(with(R"({"kind": "certainty", "target": "zz"})")); }) ==
        Errc::ValidationError);
  CHECK(code_of([&] { parse_scenario(with(R"({"kind": "memory_check", "target": ["a", "b"]})")); }) ==
        Errc::ValidationError);
  CHECK(code_of([&] {
          parse_scenario(with(R"({"kind": "certainty", "target": "a", "options": {"precision": 18}})"));
        }) == Errc::ValidationError);
  CHECK(code_of([&] {
          parse_scenario(with(R"({"kind": "certainty", "target": "a", "options": {"strict": 1}})"));
        }) == Errc::SchemaError);
  // Event names are valid single-event targets.
  const Scenario s = parse_scenario(with(R"({"kind": "certainty", "target": "a"})"));
  CHECK(std::abs(real_field(run_query(s, s.queries[0]), "certainty") - 1.0) < 1e-12);
}

TEST_CASE("strictness can be relaxed per query or per run") {
  const std::string text = R"({
    "dimension": 2,
    "events": {"a": {"angle": 0}, "p": {"angle": 0.3}, "q": {"angle": 0.5}, "z": {"angle": 1.0}},
    "histories": {"h": "a & (p | q) & z"},
    "queries": [
      {"kind": "certainty", "target": "h"},
      {"kind": "certainty", "target": "h", "options": {"strict": false}}
    ]})";
  const Scenario s = parse_scenario(text);
  const EvalReport strict = run_scenario(s);
  CHECK(strict.entries[0].error == Errc::NonOrthogonalAlternatives);
  CHECK(strict.entries[1].status() == "ok");
  CHECK_FALSE(strict.entries[1].warnings.empty());
  const EvalReport lenient = run_scenario(s, {.lenient = true});
  CHECK(lenient.entries[0].status() == "ok");
}

TEST_CASE("empty query list gives a header-only report") {
  const EvalReport r = run_scenario(load_scenario(data("empty.json")));
  CHECK(r.entries.empty());
  CHECK(r.exit_code() == 0);
  CHECK_FALSE(r.header.empty());
  const std::string text = render_report(r, ReportFormat::Text);
  CHECK(text.find("empty") != std::string::npos);
}

TEST_CASE("machine report round-trips exactly") {
  for (const char* f : {"polarizer.json", "double_slit.json", "alt_endpoint.json", "forbidden.json", "empty.json"}) {
    const EvalReport r = run_scenario(load_scenario(data(f)));
    const std::string machine = render_report(r, ReportFormat::Machine);
    CHECK(parse_machine_report(machine) == r);
  }
  const EvalReport demo = demo_polarizer(0.3, 8);
  CHECK(parse_machine_report(render_report(demo, ReportFormat::Machine)) == demo);
  CHECK(code_of([] { parse_machine_report("{}"); }) == Errc::SchemaError);
  CHECK(code_of([] { parse_machine_report("nope"); }) == Errc::SchemaError);
}

TEST_CASE("rendering is deterministic") {
  const Scenario s = load_scenario(data("double_slit.json"));
  const std::string a = render_report(run_scenario(s), ReportFormat::Text);
  const std::string b = render_report(run_scenario(load_scenario(data("double_slit.json"))), ReportFormat::Text);
  CHECK(a == b);
  CHECK(render_report(run_scenario(s), ReportFormat::Machine) == render_report(run_scenario(s), ReportFormat::Machine));
  CHECK(render_report(selfcheck_report(5, 50), ReportFormat::Text) ==
        render_report(selfcheck_report(5, 50), ReportFormat::Text));
}

TEST_CASE("text precision") {
  EvalReport r;
  r.title = "t";
  ReportEntry e;
  e.id = "1";
  e.kind = "k";
  e.fields.push_back({"x", 0.123456789});
  e.fields.push_back({"tiny", 1.5e-20});
  r.entries.push_back(e);
  const std::string p3 = render_report(r, ReportFormat::Text, 3);
  CHECK(p3.find("0.123") != std::string::npos);
  CHECK(p3.find("0.1235") == std::string::npos);
  CHECK(p3.find("e-20") != std::string::npos);
  r.entries[0].precision = 5;
  CHECK(render_report(r, ReportFormat::Text, 3).find("0.12346") != std::string::npos);
}

TEST_CASE("format_full is the shortest round-trip text") {
  for (double v : {0.1, 1.0 / 3.0, -4.0 / 27.0, 1e-300, 6.02214076e23, 0.0}) {
    CHECK(std::stod(format_full(v)) == v);
  }
  CHECK(format_full(0.1) == "0.1");
}

TEST_CASE("error records are one-line JSON") {
  const std::string rec = error_record(Errc::ValidationError, "bad \"thing\"");
  CHECK(rec.find('\n') == std::string::npos);
  CHECK(rec.find("\"exit_code\":2") != std::string::npos);
  CHECK(rec.find("ValidationError") != std::string::npos);
}

TEST_CASE("polarizer sweep demo") {
  const EvalReport r = demo_polarizer(0.0, 18);
  REQUIRE(r.entries.size() == 1);
  REQUIRE(r.entries[0].tables.size() == 1);
  const Table& t = r.entries[0].tables[0];
  CHECK(t.columns == std::vector<std::string>{"theta", "certainty", "cos^2 sin^2", "|diff|"});
  REQUIRE(t.rows.size() == 19);
  for (const auto& row : t.rows) CHECK(std::get<double>(row[3]) < 1e-12);
}

TEST_CASE("die demo and selfcheck") {
  const EvalReport die = demo_die(6, 0.5);
  CHECK(die.exit_code() == 0);
  const EvalReport bad = demo_die(1, std::nullopt);
  REQUIRE_FALSE(bad.entries.empty());
  CHECK(bad.entries.back().error == Errc::DimensionOutOfRange);
  CHECK(bad.exit_code() == 2);
  const SelfCheckSummary sc = run_selfcheck(7, 200);
  CHECK(sc.cases == 200);
  CHECK(sc.failures == 0);
  CHECK(sc.max_difference < 1e-10);
}
