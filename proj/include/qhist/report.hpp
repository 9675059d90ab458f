#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qhist/error.hpp"
#include "qhist/operator.hpp"

namespace qhist {

using Value = std::variant<std::string, std::int64_t, double, Complex, Operator>;

struct Field {
  std::string name;
  Value value;

  friend bool operator==(const Field&, const Field&) = default;
};

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Value>> rows;

  friend bool operator==(const Table&, const Table&) = default;
};

/// Same quantity computed in the projector and the amplitude representation.
struct CrossCheck {
  std::string name;
  double projector = 0.0;
  double amplitude = 0.0;
  double difference = 0.0;

  friend bool operator==(const CrossCheck&, const CrossCheck&) = default;
};

CrossCheck make_check(std::string name, double projector, double amplitude);

struct ReportEntry {
  std::string id;
  std::string kind;
  std::string target;
  std::optional<Errc> error;
  std::string message;
  std::vector<Field> fields;
  std::vector<Table> tables;
  std::vector<CrossCheck> checks;
  std::vector<std::string> warnings;
  std::optional<int> precision;  // display override

  std::string status() const;

  friend bool operator==(const ReportEntry&, const ReportEntry&) = default;
};

struct EvalReport {
  std::string title;
  std::vector<Field> header;
  std::vector<ReportEntry> entries;

  // 0 if every entry succeeded, else the most severe mapped exit code.
  int exit_code() const;

  friend bool operator==(const EvalReport&, const EvalReport&) = default;
};

enum class ReportFormat { Text, Machine };

// Precision controls display of the text format only; the machine format
// always carries full round-trip precision.
std::string render_report(const EvalReport& report, ReportFormat format, int precision = 12);

// Inverse of the machine format. Throws SchemaError on malformed input.
EvalReport parse_machine_report(const std::string& text);

// One-line machine-parsable error record.
std::string error_record(Errc code, const std::string& message);

// Shortest text that strtod() maps back to the same double.
std::string format_full(double v);

}  // namespace qhist
