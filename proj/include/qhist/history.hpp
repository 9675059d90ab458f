#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qhist {

/// A history proposition: an event, a sequence of steps (⊓) or a group of
/// mutually exclusive alternatives (⊔).
///
/// Values are kept in flattened normal form: a Seq never holds a Seq step and
/// an Alt never holds an Alt branch. Seq and Alt always have at least two
/// children; the factories collapse singletons.
class HistoryExpr {
 public:
  enum class Kind { Event, Seq, Alt };

  static HistoryExpr event(std::string name);
  static HistoryExpr seq(std::vector<HistoryExpr> steps);
  static HistoryExpr alt(std::vector<HistoryExpr> branches);

  Kind kind() const { return kind_; }
  bool is_event() const { return kind_ == Kind::Event; }
  bool is_seq() const { return kind_ == Kind::Seq; }
  bool is_alt() const { return kind_ == Kind::Alt; }

  // Event name; empty for Seq/Alt.
  const std::string& name() const { return name_; }
  const std::vector<HistoryExpr>& children() const { return children_; }

  friend bool operator==(const HistoryExpr&, const HistoryExpr&) = default;

 private:
  HistoryExpr(Kind k, std::string name, std::vector<HistoryExpr> children)
      : kind_(k), name_(std::move(name)), children_(std::move(children)) {}

  Kind kind_ = Kind::Event;
  std::string name_;
  std::vector<HistoryExpr> children_;
};

/// An alternative-free chain of events.
struct ElementaryPath {
  std::vector<std::string> events;

  friend bool operator==(const ElementaryPath&, const ElementaryPath&) = default;
  friend auto operator<=>(const ElementaryPath&, const ElementaryPath&) = default;
};

// Grammar:
//   history := seq
//   seq     := alt { "&" alt }
//   alt     := atom { "|" atom }
//   atom    := IDENT | "(" history ")"
// "⊓" and "⊔" are accepted for "&" and "|". Throws SyntaxError / UnknownToken
// carrying the byte offset of the offending token.
HistoryExpr parse(std::string_view text);

// Canonical text; Alt groups are always parenthesized.
std::string render(const HistoryExpr& h);

// One "Kind name" line per node, indented by depth.
std::string outline(const HistoryExpr& h);

// Reverses every Seq recursively; Alt branch order is kept.
HistoryExpr reverse(const HistoryExpr& h);

// Cartesian expansion of every Alt, left-to-right slots, declared branch order.
std::vector<ElementaryPath> expand_paths(const HistoryExpr& h);

// First and last step of a top-level Seq, otherwise (h, h).
std::pair<HistoryExpr, HistoryExpr> endpoints(const HistoryExpr& h);

// True when both endpoints are single events.
bool has_elementary_endpoints(const HistoryExpr& h);

std::string to_string(const ElementaryPath& p);  // "a·b·c"
ElementaryPath reversed(ElementaryPath p);
HistoryExpr to_history(const ElementaryPath& p);

}  // namespace qhist
