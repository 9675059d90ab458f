#include "qhist/history.hpp"

#include <algorithm>
#include <stdexcept>

#include "qhist/error.hpp"

namespace qhist {

namespace {

template <HistoryExpr::Kind K>
std::vector<HistoryExpr> flatten(std::vector<HistoryExpr> items) {
  std::vector<HistoryExpr> out;
  out.reserve(items.size());
  for (auto& item : items) {
    if (item.kind() == K) {
      const auto& inner = item.children();
      out.insert(out.end(), inner.begin(), inner.end());
    } else {
      out.push_back(std::move(item));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Lexer

enum class Tok { Ident, And, Or, LParen, RParen, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::string_view describe(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::And: return "'&'";
    case Tok::Or: return "'|'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::End: return "end of input";
  }
  return "?";
}

std::vector<Token> tokenize(std::string_view s) {
  // UTF-8 encodings of U+2293 (⊓) and U+2294 (⊔)
  static constexpr std::string_view kSqCap = "\xE2\x8A\x93";
  static constexpr std::string_view kSqCup = "\xE2\x8A\x94";

  std::vector<Token> toks;
  std::size_t i = 0;
  auto ident_start = [](char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_';
  };
  auto ident_char = [&](char c) { return ident_start(c) || (c >= '0' && c <= '9'); };

  while (i < s.size()) {
    const char c = s[i];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      ++i;
    } else if (c == '&') {
      toks.push_back({Tok::And, "&", i++});
    } else if (c == '|') {
      toks.push_back({Tok::Or, "|", i++});
    } else if (c == '(') {
      toks.push_back({Tok::LParen, "(", i++});
    } else if (c == ')') {
      toks.push_back({Tok::RParen, ")", i++});
    } else if (s.substr(i).starts_with(kSqCap)) {
      toks.push_back({Tok::And, "&", i});
      i += kSqCap.size();
    } else if (s.substr(i).starts_with(kSqCup)) {
      toks.push_back({Tok::Or, "|", i});
      i += kSqCup.size();
    } else if (ident_start(c)) {
      const std::size_t start = i;
      while (i < s.size() && ident_char(s[i])) ++i;
      toks.push_back({Tok::Ident, std::string(s.substr(start, i - start)), start});
    } else {
      throw Error(Errc::UnknownToken,
                  "unknown token '" + std::string(1, c) + "' at position " + std::to_string(i), i);
    }
  }
  toks.push_back({Tok::End, "", s.size()});
  return toks;
}

// ---------------------------------------------------------------------------
// Recursive-descent parser

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  HistoryExpr parse_all() {
    HistoryExpr h = parse_seq();
    if (peek().kind != Tok::End) unexpected("end of input");
    return h;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& advance() { return toks_[pos_++]; }

  [[noreturn]] void unexpected(std::string_view expected) const {
    const Token& t = peek();
    std::string got = t.kind == Tok::Ident ? "identifier '" + t.text + "'" : std::string(describe(t.kind));
    throw Error(Errc::SyntaxError,
                "syntax error at position " + std::to_string(t.pos) + ": expected " +
                    std::string(expected) + ", got " + got,
                t.pos);
  }

  HistoryExpr parse_seq() {
    std::vector<HistoryExpr> steps{parse_alt()};
    while (peek().kind == Tok::And) {
      advance();
      steps.push_back(parse_alt());
    }
    return HistoryExpr::seq(std::move(steps));
  }

  HistoryExpr parse_alt() {
    std::vector<HistoryExpr> branches{parse_atom()};
    while (peek().kind == Tok::Or) {
      advance();
      branches.push_back(parse_atom());
    }
    return HistoryExpr::alt(std::move(branches));
  }

  HistoryExpr parse_atom() {
    const Token& t = peek();
    if (t.kind == Tok::Ident) {
      return HistoryExpr::event(advance().text);
    }
    if (t.kind == Tok::LParen) {
      advance();
      HistoryExpr inner = parse_seq();
      if (peek().kind != Tok::RParen) unexpected("')'");
      advance();
      return inner;
    }
    unexpected("identifier or '('");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

void render_into(const HistoryExpr& h, std::string& out) {
  switch (h.kind()) {
    case HistoryExpr::Kind::Event:
      out += h.name();
      break;
    case HistoryExpr::Kind::Seq: {
      bool first = true;
      for (const auto& step : h.children()) {
        if (!first) out += " & ";
        first = false;
        render_into(step, out);
      }
      break;
    }
    case HistoryExpr::Kind::Alt: {
      out += '(';
      bool first = true;
      for (const auto& b : h.children()) {
        if (!first) out += " | ";
        first = false;
        if (b.is_seq()) {
          out += '(';
          render_into(b, out);
          out += ')';
        } else {
          render_into(b, out);
        }
      }
      out += ')';
      break;
    }
  }
}

void outline_into(const HistoryExpr& h, int depth, std::string& out) {
  out.append(static_cast<std::size_t>(depth) * 2, ' ');
  switch (h.kind()) {
    case HistoryExpr::Kind::Event:
      out += "Event " + h.name() + "\n";
      return;
    case HistoryExpr::Kind::Seq:
      out += "Seq\n";
      break;
    case HistoryExpr::Kind::Alt:
      out += "Alt\n";
      break;
  }
  for (const auto& c : h.children()) outline_into(c, depth + 1, out);
}

}  // namespace

HistoryExpr HistoryExpr::event(std::string name) {
  return HistoryExpr(Kind::Event, std::move(name), {});
}

HistoryExpr HistoryExpr::seq(std::vector<HistoryExpr> steps) {
  if (steps.empty()) throw std::invalid_argument("HistoryExpr::seq: no steps");
  steps = flatten<Kind::Seq>(std::move(steps));
  if (steps.size() == 1) return std::move(steps.front());
  return HistoryExpr(Kind::Seq, {}, std::move(steps));
}

HistoryExpr HistoryExpr::alt(std::vector<HistoryExpr> branches) {
  if (branches.empty()) throw std::invalid_argument("HistoryExpr::alt: no branches");
  branches = flatten<Kind::Alt>(std::move(branches));
  if (branches.size() == 1) return std::move(branches.front());
  return HistoryExpr(Kind::Alt, {}, std::move(branches));
}

HistoryExpr parse(std::string_view text) { return Parser(tokenize(text)).parse_all(); }

std::string render(const HistoryExpr& h) {
  std::string out;
  render_into(h, out);
  return out;
}

std::string outline(const HistoryExpr& h) {
  std::string out;
  outline_into(h, 0, out);
  return out;
}

HistoryExpr reverse(const HistoryExpr& h) {
  switch (h.kind()) {
    case HistoryExpr::Kind::Event:
      return h;
    case HistoryExpr::Kind::Seq: {
      std::vector<HistoryExpr> steps;
      steps.reserve(h.children().size());
      for (auto it = h.children().rbegin(); it != h.children().rend(); ++it) steps.push_back(reverse(*it));
      return HistoryExpr::seq(std::move(steps));
    }
    case HistoryExpr::Kind::Alt: {
      std::vector<HistoryExpr> branches;
      branches.reserve(h.children().size());
      for (const auto& b : h.children()) branches.push_back(reverse(b));
      return HistoryExpr::alt(std::move(branches));
    }
  }
  return h;
}

std::vector<ElementaryPath> expand_paths(const HistoryExpr& h) {
  switch (h.kind()) {
    case HistoryExpr::Kind::Event:
      return {ElementaryPath{{h.name()}}};
    case HistoryExpr::Kind::Alt: {
      std::vector<ElementaryPath> out;
      for (const auto& b : h.children()) {
        auto sub = expand_paths(b);
        out.insert(out.end(), std::make_move_iterator(sub.begin()), std::make_move_iterator(sub.end()));
      }
      return out;
    }
    case HistoryExpr::Kind::Seq: {
      std::vector<ElementaryPath> acc{ElementaryPath{}};
      for (const auto& step : h.children()) {
        const auto tails = expand_paths(step);
        std::vector<ElementaryPath> next;
        next.reserve(acc.size() * tails.size());
        for (const auto& head : acc) {
          for (const auto& tail : tails) {
            ElementaryPath p = head;
            p.events.insert(p.events.end(), tail.events.begin(), tail.events.end());
            next.push_back(std::move(p));
          }
        }
        acc = std::move(next);
      }
      return acc;
    }
  }
  return {};
}

std::pair<HistoryExpr, HistoryExpr> endpoints(const HistoryExpr& h) {
  if (h.is_seq()) return {h.children().front(), h.children().back()};
  return {h, h};
}

bool has_elementary_endpoints(const HistoryExpr& h) {
  auto [first, last] = endpoints(h);
  return first.is_event() && last.is_event();
}

std::string to_string(const ElementaryPath& p) {
  std::string out;
  for (std::size_t i = 0; i < p.events.size(); ++i) {
    if (i) out += "\xC2\xB7";  // middle dot
    out += p.events[i];
  }
  return out;
}

ElementaryPath reversed(ElementaryPath p) {
  std::reverse(p.events.begin(), p.events.end());
  return p;
}

HistoryExpr to_history(const ElementaryPath& p) {
  std::vector<HistoryExpr> steps;
  steps.reserve(p.events.size());
  for (const auto& e : p.events) steps.push_back(HistoryExpr::event(e));
  return HistoryExpr::seq(std::move(steps));
}

}  // namespace qhist
