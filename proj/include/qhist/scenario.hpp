#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qhist/history.hpp"
#include "qhist/ray.hpp"
#include "qhist/report.hpp"

namespace qhist {

enum class QueryKind {
  Operator,
  Certainty,
  Amplitude,
  AbsoluteProb,
  ConditionalProb,
  Interference,
  Loops,
  Actualize,
  MemoryCheck,
};

std::string_view query_kind_name(QueryKind k);
std::optional<QueryKind> query_kind_from_name(std::string_view name);

struct Query {
  QueryKind kind = QueryKind::Certainty;
  // One history (or event) name; three event names for MemoryCheck.
  std::vector<std::string> target;
  std::optional<bool> strict;
  std::optional<int> precision;
};

struct NamedHistory {
  std::string name;
  std::string source;
  HistoryExpr expr;
};

struct Scenario {
  std::string name;
  EventSpace space{1};
  std::vector<NamedHistory> histories;
  std::vector<Query> queries;

  std::size_t dimension() const { return space.dimension(); }
  const NamedHistory* find_history(std::string_view name) const;
};

// Throws SchemaError (malformed structure, with a JSON-pointer field path) or
// ValidationError (bad ray, bad grammar, unknown reference).
Scenario parse_scenario(const std::string& json_text);
// Also throws FileNotFound.
Scenario load_scenario(const std::string& path);

struct RunOptions {
  bool lenient = false;
};

// Never throws for evaluation failures; they become the entry's status.
ReportEntry run_query(const Scenario& s, const Query& q, const RunOptions& opts = {});

EvalReport run_scenario(const Scenario& s, const RunOptions& opts = {});

}  // namespace qhist
