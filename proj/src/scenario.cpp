#include "qhist/scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qhist/amplitude_eval.hpp"
#include "qhist/error.hpp"
#include "qhist/probability.hpp"
#include "qhist/projector_eval.hpp"

namespace qhist {

using json = nlohmann::ordered_json;

namespace {

constexpr const char* kAltEndpointNote =
    "alternative endpoint: projector and amplitude representations are not equivalent here; "
    "both values are reported";

[[noreturn]] void schema_error(const std::string& path, const std::string& what) {
  throw Error(Errc::SchemaError, path + ": " + what);
}

[[noreturn]] void validation_error(const std::string& what) { throw Error(Errc::ValidationError, what); }

void check_keys(const json& obj, const std::string& path, std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, _] : obj.items()) {
    bool ok = false;
    for (auto a : allowed) ok = ok || key == a;
    if (!ok) schema_error(path + "/" + key, "unknown key");
  }
}

double require_number(const json& j, const std::string& path) {
  if (!j.is_number()) schema_error(path, "expected a number");
  return j.get<double>();
}

std::int64_t require_integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) schema_error(path, "expected an integer");
  return j.get<std::int64_t>();
}

Ray parse_ray(const std::string& name, const json& spec, std::size_t dim, const std::string& path) {
  if (!spec.is_object()) schema_error(path, "event specification must be an object");
  check_keys(spec, path, {"components", "angle", "basis"});
  if (spec.size() != 1) schema_error(path, "exactly one of components, angle, basis is required");

  try {
    if (spec.contains("components")) {
      const json& comps = spec["components"];
      const std::string cpath = path + "/components";
      if (!comps.is_array()) schema_error(cpath, "expected an array");
      std::vector<Complex> v;
      for (std::size_t i = 0; i < comps.size(); ++i) {
        const std::string ip = cpath + "/" + std::to_string(i);
        const json& c = comps[i];
        if (c.is_number()) {
          v.emplace_back(c.get<double>(), 0.0);
        } else if (c.is_array() && c.size() == 2) {
          v.emplace_back(require_number(c[0], ip + "/0"), require_number(c[1], ip + "/1"));
        } else {
          schema_error(ip, "expected a number or [re, im]");
        }
      }
      if (v.size() != dim) {
        validation_error("event '" + name + "': " + std::to_string(v.size()) +
                         " components for dimension " + std::to_string(dim));
      }
      return make_ray(v);
    }
    if (spec.contains("angle")) {
      const double theta = require_number(spec["angle"], path + "/angle");
      if (dim != 2) validation_error("event '" + name + "': angle shorthand requires dimension 2");
      return planar_ray(theta);
    }
    const std::int64_t k = require_integer(spec["basis"], path + "/basis");
    if (k < 1 || static_cast<std::size_t>(k) > dim) {
      validation_error("event '" + name + "': basis index " + std::to_string(k) + " outside [1, " +
                       std::to_string(dim) + "]");
    }
    return basis_ray(dim, static_cast<std::size_t>(k - 1));
  } catch (const Error& e) {
    if (e.code() == Errc::SchemaError || e.code() == Errc::ValidationError) throw;
    validation_error("event '" + name + "': " + e.what());
  }
}

void require_events(const HistoryExpr& h, const EventSpace& space, const std::string& where) {
  if (h.is_event()) {
    if (!space.contains(h.name())) validation_error(where + ": unknown event '" + h.name() + "'");
    return;
  }
  for (const auto& c : h.children()) require_events(c, space, where);
}

// ---------------------------------------------------------------------------
// Query evaluation

struct Target {
  std::string label;
  HistoryExpr expr;
};

Target resolve(const Scenario& s, const std::string& name) {
  if (const auto* h = s.find_history(name)) return {name, h->expr};
  if (s.space.contains(name)) return {name, HistoryExpr::event(name)};
  throw Error(Errc::UnknownEvent, "unknown history or event '" + name + "'");
}

double real_trace_of(const Operator& g) { return trace(g).real(); }

// |A(γ)|² via A(γ)·A(γ⁻¹), valid for any endpoint shape.
double amplitude_square(const HistoryExpr& h, const EventSpace& space) {
  return (amplitude_of(h, space).value * amplitude_of(reverse(h), space).value).real();
}

void flag_mismatch(ReportEntry& e) {
  for (const auto& c : e.checks) {
    if (c.difference > kCrossCheckTol) {
      e.error = Errc::InternalConsistency;
      e.message = c.name + ": representations differ by " + format_full(c.difference);
      return;
    }
  }
}

void run_operator(ReportEntry& e, const Target& t, const Scenario& s, const EvalOptions& eo) {
  const HistoryOperator hop = gamma_of(t.expr, s.space, eo);
  e.fields.push_back({"history", render(t.expr)});
  e.fields.push_back({"Gamma", hop.gamma});
  e.fields.push_back({"trace", trace(hop.gamma)});
  e.fields.push_back({"hermitian", std::string(hop.gamma.is_hermitian(kExactTol) ? "yes" : "no")});
  const auto last = endpoints(t.expr).second;
  if (last.is_event()) {
    const Operator expected = trace(hop.gamma) * Operator(s.space.projector(last.name()));
    e.fields.push_back({"final-event deviation", max_abs_diff(hop.gamma, expected)});
  }
  e.warnings = hop.warnings;
}

void run_certainty(ReportEntry& e, const Target& t, const Scenario& s, const EvalOptions& eo) {
  const HistoryOperator hop = gamma_of(t.expr, s.space, eo);
  e.warnings = hop.warnings;
  const double lambda = certainty_of(t.expr, s.space, eo);
  e.fields.push_back({"history", render(t.expr)});
  e.fields.push_back({"certainty", lambda});
  e.checks.push_back(make_check("tr(Gamma)", real_trace_of(hop.gamma), amplitude_square(t.expr, s.space)));
  if (has_elementary_endpoints(t.expr)) {
    flag_mismatch(e);
  } else {
    e.warnings.push_back(kAltEndpointNote);
  }
}

void run_amplitude(ReportEntry& e, const Target& t, const Scenario& s) {
  const Complex fwd = amplitude_of(t.expr, s.space).value;
  const Complex bwd = amplitude_of(reverse(t.expr), s.space).value;
  e.fields.push_back({"history", render(t.expr)});
  e.fields.push_back({"A(g)", fwd});
  e.fields.push_back({"A(g^-1)", bwd});
  e.fields.push_back({"A(g)A(g^-1)", fwd * bwd});
  Table paths{"paths", {"path", "amplitude"}, {}};
  for (const auto& p : expand_paths(t.expr)) paths.rows.push_back({to_string(p), path_amplitude(p, s.space)});
  e.tables.push_back(std::move(paths));
}

void add_probability_fields(ReportEntry& e, const ProbabilityResult& r) {
  e.fields.push_back({"probability", r.value});
  e.fields.push_back({"numerator", r.numerator});
  e.fields.push_back({"denominator", r.denominator});
  e.fields.push_back({"unclamped", r.raw()});
  e.warnings = r.warnings;
}

void run_absolute(ReportEntry& e, const Target& t, const Scenario& s, const EvalOptions& eo) {
  const ProbabilityResult r = absolute_probability(t.expr, s.space, eo);
  e.fields.push_back({"history", render(t.expr)});
  add_probability_fields(e, r);
  const double n = static_cast<double>(s.dimension());
  if (r.amplitude_value) {
    e.checks.push_back(make_check("p(g/I)", r.raw(), *r.amplitude_value));
    flag_mismatch(e);
  } else {
    e.checks.push_back(make_check("p(g/I)", r.raw(), amplitude_square(t.expr, s.space) / n));
    e.warnings.push_back(kAltEndpointNote);
  }
}

void run_conditional(ReportEntry& e, const Target& t, const Scenario& s, const EvalOptions& eo) {
  const ProbabilityResult r = conditional_probability(t.expr, s.space, eo);
  e.fields.push_back({"history", render(t.expr)});
  e.fields.push_back({"given", endpoints(t.expr).first.name()});
  add_probability_fields(e, r);
  if (r.amplitude_value) {
    e.checks.push_back(make_check("p(g/a)", r.raw(), *r.amplitude_value));
    flag_mismatch(e);
  } else {
    e.checks.push_back(make_check("p(g/a)", r.raw(), amplitude_square(t.expr, s.space)));
    e.warnings.push_back(kAltEndpointNote);
  }
}

void run_interference(ReportEntry& e, const Target& t, const Scenario& s, const EvalOptions& eo) {
  const InterferenceSplit split = interference_split(t.expr, s.space, eo);
  const auto loops = closed_loops(t.expr, s.space);
  Complex loop_total{}, loop_interference{};
  for (const auto& l : loops) {
    loop_total += l.amplitude;
    if (!l.direct) loop_interference += l.amplitude;
  }
  e.fields.push_back({"history", render(t.expr)});
  e.fields.push_back({"tr(Gamma)", trace(split.full)});
  e.fields.push_back({"tr(I)", trace(split.interference)});
  e.fields.push_back({"I", split.interference});
  Table direct{"direct terms", {"path", "tr(Gamma_path)"}, {}};
  for (const auto& [path, op] : split.direct_terms) direct.rows.push_back({to_string(path), real_trace_of(op)});
  e.tables.push_back(std::move(direct));
  e.checks.push_back(make_check("tr(Gamma)", real_trace_of(split.full), loop_total.real()));
  e.checks.push_back(make_check("tr(I)", real_trace_of(split.interference), loop_interference.real()));
  flag_mismatch(e);
}

void run_loops(ReportEntry& e, const Target& t, const Scenario& s, const EvalOptions& eo) {
  const auto loops = closed_loops(t.expr, s.space);
  const HistoryOperator hop = gamma_of(t.expr, s.space, eo);
  e.warnings = hop.warnings;
  Complex total{}, interference{};
  Table table{"closed loops", {"forward", "backward", "kind", "amplitude"}, {}};
  for (const auto& l : loops) {
    total += l.amplitude;
    if (!l.direct) interference += l.amplitude;
    table.rows.push_back({to_string(l.forward), to_string(l.backward),
                          std::string(l.direct ? "direct" : "interference"), l.amplitude});
  }
  e.fields.push_back({"history", render(t.expr)});
  e.fields.push_back({"loops", static_cast<std::int64_t>(loops.size())});
  e.fields.push_back({"sum", total});
  e.fields.push_back({"interference sum", interference});
  e.tables.push_back(std::move(table));
  e.checks.push_back(make_check("tr(Gamma)", real_trace_of(hop.gamma), total.real()));
  flag_mismatch(e);
}

void run_actualize(ReportEntry& e, const Target& t, const Scenario& s, const EvalOptions& eo) {
  const Operator psi = actualize(t.expr, s.space, eo);
  const std::string last = endpoints(t.expr).second.name();
  e.fields.push_back({"history", render(t.expr)});
  e.fields.push_back({"final event", last});
  e.fields.push_back({"Psi", psi});
  e.fields.push_back({"deviation from P_final", max_abs_diff(psi, s.space.projector(last))});
}

void run_memory(ReportEntry& e, const Query& q, const Scenario& s) {
  const auto& a = q.target[0];
  const auto& b = q.target[1];
  const auto& c = q.target[2];
  const MemoryLossResult m = memory_loss_check(a, b, c, s.space);
  const double diff = std::abs(m.given_history - m.given_last);
  e.fields.push_back({"p(c/a&b)", m.given_history});
  e.fields.push_back({"p(c/b)", m.given_last});
  e.fields.push_back({"|diff|", diff});

  // p(c/a⊓b) from amplitudes: |⟨a|b⟩⟨b|c⟩|² / |⟨a|b⟩|².
  const auto& sp = s.space;
  const double ab = std::norm(inner_product(sp.ray(a), sp.ray(b)));
  const double abc = std::norm(inner_product(sp.ray(a), sp.ray(b)) * inner_product(sp.ray(b), sp.ray(c)));
  e.checks.push_back(make_check("p(c/a&b)", m.given_history, abc / ab));
  flag_mismatch(e);
  if (!e.error && diff > kCrossCheckTol) {
    e.error = Errc::InternalConsistency;
    e.message = "p(c/a&b) and p(c/b) differ by " + format_full(diff);
  }
}

std::string join(const std::vector<std::string>& v, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
  return out;
}

}  // namespace

std::string_view query_kind_name(QueryKind k) {
  switch (k) {
    case QueryKind::Operator: return "operator";
    case QueryKind::Certainty: return "certainty";
    case QueryKind::Amplitude: return "amplitude";
    case QueryKind::AbsoluteProb: return "absolute_prob";
    case QueryKind::ConditionalProb: return "conditional_prob";
    case QueryKind::Interference: return "interference";
    case QueryKind::Loops: return "loops";
    case QueryKind::Actualize: return "actualize";
    case QueryKind::MemoryCheck: return "memory_check";
  }
  return "?";
}

std::optional<QueryKind> query_kind_from_name(std::string_view name) {
  for (int k = 0; k <= static_cast<int>(QueryKind::MemoryCheck); ++k) {
    if (query_kind_name(static_cast<QueryKind>(k)) == name) return static_cast<QueryKind>(k);
  }
  return std::nullopt;
}

const NamedHistory* Scenario::find_history(std::string_view name) const {
  for (const auto& h : histories)
    if (h.name == name) return &h;
  return nullptr;
}

Scenario parse_scenario(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    schema_error("", std::string("not a valid JSON document: ") + e.what());
  }
  if (!doc.is_object()) schema_error("", "top level must be an object");
  check_keys(doc, "", {"name", "description", "dimension", "events", "histories", "queries"});

  if (!doc.contains("dimension")) schema_error("/dimension", "missing");
  const std::int64_t dim = require_integer(doc["dimension"], "/dimension");
  if (dim < 1 || dim > static_cast<std::int64_t>(kMaxDimension)) {
    validation_error("dimension " + std::to_string(dim) + " outside [1, " + std::to_string(kMaxDimension) + "]");
  }

  Scenario s;
  s.space = EventSpace(static_cast<std::size_t>(dim));
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) schema_error("/name", "expected a string");
    s.name = doc["name"].get<std::string>();
  }

  if (!doc.contains("events")) schema_error("/events", "missing");
  if (!doc["events"].is_object()) schema_error("/events", "expected an object");
  for (const auto& [name, spec] : doc["events"].items()) {
    const Ray r = parse_ray(name, spec, s.dimension(), "/events/" + name);
    try {
      s.space.add(name, r);
    } catch (const Error& e) {
      validation_error(std::string("event '") + name + "': " + e.what());
    }
  }

  if (doc.contains("histories")) {
    if (!doc["histories"].is_object()) schema_error("/histories", "expected an object");
    for (const auto& [name, text] : doc["histories"].items()) {
      if (!text.is_string()) schema_error("/histories/" + name, "expected a history expression string");
      const std::string src = text.get<std::string>();
      HistoryExpr h = HistoryExpr::event("_");
      try {
        h = parse(src);
      } catch (const Error& e) {
        std::string msg = "history '" + name + "': " + e.what();
        if (e.position()) throw Error(Errc::ValidationError, msg, *e.position());
        validation_error(msg);
      }
      require_events(h, s.space, "history '" + name + "'");
      s.histories.push_back({name, src, std::move(h)});
    }
  }

  if (doc.contains("queries")) {
    const json& qs = doc["queries"];
    if (!qs.is_array()) schema_error("/queries", "expected an array");
    for (std::size_t i = 0; i < qs.size(); ++i) {
      const std::string path = "/queries/" + std::to_string(i);
      const json& jq = qs[i];
      if (!jq.is_object()) schema_error(path, "expected an object");
      check_keys(jq, path, {"kind", "target", "options"});
      if (!jq.contains("kind") || !jq["kind"].is_string()) schema_error(path + "/kind", "expected a string");
      Query q;
      const auto kind = query_kind_from_name(jq["kind"].get<std::string>());
      if (!kind) validation_error(path + ": unknown query kind '" + jq["kind"].get<std::string>() + "'");
      q.kind = *kind;

      if (!jq.contains("target")) schema_error(path + "/target", "missing");
      const json& jt = jq["target"];
      if (jt.is_string()) {
        q.target.push_back(jt.get<std::string>());
      } else if (jt.is_array()) {
        for (std::size_t k = 0; k < jt.size(); ++k) {
          if (!jt[k].is_string()) schema_error(path + "/target/" + std::to_string(k), "expected a string");
          q.target.push_back(jt[k].get<std::string>());
        }
      } else {
        schema_error(path + "/target", "expected a string or an array of strings");
      }

      if (q.kind == QueryKind::MemoryCheck) {
        if (q.target.size() != 3) validation_error(path + ": memory_check needs three event names");
        for (const auto& ev : q.target)
          if (!s.space.contains(ev)) validation_error(path + ": unknown event '" + ev + "'");
      } else {
        if (q.target.size() != 1) validation_error(path + ": " + jq["kind"].get<std::string>() + " needs one target");
        if (!s.find_history(q.target[0]) && !s.space.contains(q.target[0])) {
          validation_error(path + ": unknown history or event '" + q.target[0] + "'");
        }
      }

      if (jq.contains("options")) {
        const json& jo = jq["options"];
        if (!jo.is_object()) schema_error(path + "/options", "expected an object");
        check_keys(jo, path + "/options", {"strict", "precision"});
        if (jo.contains("strict")) {
          if (!jo["strict"].is_boolean()) schema_error(path + "/options/strict", "expected a boolean");
          q.strict = jo["strict"].get<bool>();
        }
        if (jo.contains("precision")) {
          const auto p = require_integer(jo["precision"], path + "/options/precision");
          if (p < 0 || p > 17) validation_error(path + ": precision must be in [0, 17]");
          q.precision = static_cast<int>(p);
        }
      }
      s.queries.push_back(std::move(q));
    }
  }
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::FileNotFound, "cannot open scenario file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str());
}

ReportEntry run_query(const Scenario& s, const Query& q, const RunOptions& opts) {
  ReportEntry e;
  e.kind = std::string(query_kind_name(q.kind));
  e.target = join(q.target, ", ");
  e.precision = q.precision;
  EvalOptions eo;
  eo.strict = q.strict.value_or(!opts.lenient);

  try {
    if (q.kind == QueryKind::MemoryCheck) {
      run_memory(e, q, s);
      return e;
    }
    const Target t = resolve(s, q.target.at(0));
    switch (q.kind) {
      case QueryKind::Operator: run_operator(e, t, s, eo); break;
      case QueryKind::Certainty: run_certainty(e, t, s, eo); break;
      case QueryKind::Amplitude: run_amplitude(e, t, s); break;
      case QueryKind::AbsoluteProb: run_absolute(e, t, s, eo); break;
      case QueryKind::ConditionalProb: run_conditional(e, t, s, eo); break;
      case QueryKind::Interference: run_interference(e, t, s, eo); break;
      case QueryKind::Loops: run_loops(e, t, s, eo); break;
      case QueryKind::Actualize: run_actualize(e, t, s, eo); break;
      case QueryKind::MemoryCheck: break;
    }
  } catch (const Error& err) {
    e.error = err.code();
    e.message = err.what();
  }
  return e;
}

EvalReport run_scenario(const Scenario& s, const RunOptions& opts) {
  EvalReport r;
  r.title = "scenario" + (s.name.empty() ? std::string() : " " + s.name);
  r.header.push_back({"dimension", static_cast<std::int64_t>(s.dimension())});
  r.header.push_back({"events", join(s.space.names(), " ")});
  r.header.push_back({"strict", std::string(opts.lenient ? "no" : "yes")});
  for (std::size_t i = 0; i < s.queries.size(); ++i) {
    ReportEntry e = run_query(s, s.queries[i], opts);
    e.id = std::to_string(i + 1);
    r.entries.push_back(std::move(e));
  }
  return r;
}

}  // namespace qhist
