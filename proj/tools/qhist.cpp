// qhist: evaluate quantum histories from scenario files or built-in demos.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "qhist/demos.hpp"
#include "qhist/error.hpp"
#include "qhist/history.hpp"
#include "qhist/report.hpp"
#include "qhist/scenario.hpp"

namespace {

struct Globals {
  bool json = false;
  bool lenient = false;
  int precision = 12;
  std::uint64_t seed = 20240101;
};

int emit(const qhist::EvalReport& report, const Globals& g) {
  std::cout << qhist::render_report(report, g.json ? qhist::ReportFormat::Machine : qhist::ReportFormat::Text,
                                    g.precision);
  const int code = report.exit_code();
  if (code != 0) {
    for (const auto& e : report.entries) {
      if (e.error) {
        std::cerr << qhist::error_record(*e.error, "[" + e.id + "] " + e.message) << "\n";
        break;
      }
    }
  }
  return code;
}

int cmd_parse(const std::string& expr, const Globals& g) {
  const qhist::HistoryExpr h = qhist::parse(expr);
  if (g.json) {
    nlohmann::ordered_json doc;
    doc["canonical"] = qhist::render(h);
    doc["outline"] = qhist::outline(h);
    nlohmann::ordered_json paths = nlohmann::ordered_json::array();
    for (const auto& p : qhist::expand_paths(h)) paths.push_back(p.events);
    doc["paths"] = std::move(paths);
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << qhist::render(h) << "\n" << qhist::outline(h);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qhist - sequential and alternative quantum histories"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_flag("--json", g.json, "Machine-readable report");
  app.add_flag("--lenient", g.lenient, "Downgrade non-orthogonal alternatives to warnings");
  app.add_option("--precision", g.precision, "Decimal digits in text reports")->check(CLI::Range(0, 17));
  app.add_option("--seed", g.seed, "Seed for selfcheck");

  std::string expr;
  auto* parse_cmd = app.add_subcommand("parse", "Print canonical form and AST outline");
  parse_cmd->add_option("expr", expr, "History expression")->required();

  std::string scenario_path;
  auto* eval_cmd = app.add_subcommand("eval", "Run every query of a scenario file");
  eval_cmd->add_option("--scenario", scenario_path, "Scenario JSON file")->required();

  auto* demo_cmd = app.add_subcommand("demo", "Built-in demonstrations");
  demo_cmd->require_subcommand(1);

  double theta = 0.7853981633974483;
  std::optional<std::size_t> sweep;
  auto* pol_cmd = demo_cmd->add_subcommand("polarizer", "Three-polarizer history");
  pol_cmd->add_option("--theta", theta, "Angle between a and b (radians)");
  pol_cmd->add_option("--sweep", sweep, "Sweep theta over [0, pi/2] in this many steps");

  bool commuting = false;
  auto* ds_cmd = demo_cmd->add_subcommand("double-slit", "Double-slit interference decomposition");
  ds_cmd->add_flag("--commuting", commuting, "Source commuting with both slits");

  std::size_t faces = 6;
  std::optional<double> rotate;
  auto* die_cmd = demo_cmd->add_subcommand("die", "Quantum die");
  die_cmd->add_option("--faces", faces, "Number of faces")->required();
  die_cmd->add_option("--rotate", rotate, "Rotation angle in the (f1, f2) plane (radians)");

  std::size_t cases = 1000;
  auto* self_cmd = app.add_subcommand("selfcheck", "Randomized representation-equivalence suite");
  self_cmd->add_option("--cases", cases, "Number of random histories");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << qhist::error_record(qhist::Errc::ValidationError, e.what()) << "\n";
    return 2;
  }

  try {
    if (*parse_cmd) return cmd_parse(expr, g);
    if (*eval_cmd) {
      const qhist::Scenario s = qhist::load_scenario(scenario_path);
      return emit(qhist::run_scenario(s, {g.lenient}), g);
    }
    if (*pol_cmd) return emit(qhist::demo_polarizer(theta, sweep), g);
    if (*ds_cmd) return emit(qhist::demo_double_slit(commuting), g);
    if (*die_cmd) return emit(qhist::demo_die(faces, rotate), g);
    if (*self_cmd) return emit(qhist::selfcheck_report(g.seed, cases), g);
  } catch (const qhist::Error& e) {
    std::cerr << qhist::error_record(e.code(), e.what()) << "\n";
    return qhist::exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << qhist::error_record(qhist::Errc::InternalConsistency, e.what()) << "\n";
    return 4;
  }
  return 0;
}
