#include <doctest.h>

#include <algorithm>
#include <random>

#include "oracle.hpp"
#include "qhist/error.hpp"
#include "qhist/history.hpp"
#include "test_util.hpp"

using namespace qhist;
using testutil::code_of;

namespace {

HistoryExpr ev(const char* n) { return HistoryExpr::event(n); }

}  // namespace

TEST_CASE("parse builds flattened ASTs") {
  CHECK(parse("a & b & c") == HistoryExpr::seq({ev("a"), ev("b"), ev("c")}));
  CHECK(parse("(a & b) & c") == parse("a & (b & c)"));
  CHECK(parse("a & (b1 | b2) & c") ==
        HistoryExpr::seq({ev("a"), HistoryExpr::alt({ev("b1"), ev("b2")}), ev("c")}));
  CHECK(parse("a") == ev("a"));
  CHECK(parse("((a))") == ev("a"));
  CHECK(parse("(a | b) | c") == HistoryExpr::alt({ev("a"), ev("b"), ev("c")}));
}

TEST_CASE("alternative binds tighter than sequence") {
  CHECK(parse("a & b1 | b2 & c") == parse("a & (b1 | b2) & c"));
  CHECK(parse("a1 | a2 & b") == HistoryExpr::seq({HistoryExpr::alt({ev("a1"), ev("a2")}), ev("b")}));
}

TEST_CASE("unicode connectives and whitespace") {
  CHECK(parse("a \xE2\x8A\x93 (b1 \xE2\x8A\x94 b2) \xE2\x8A\x93 c") == parse("a & (b1 | b2) & c"));
  CHECK(parse("  a\t&\n b_2  ") == HistoryExpr::seq({ev("a"), ev("b_2")}));
}

TEST_CASE("syntax errors carry the offending position") {
  try {
    parse("a & & b");
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::SyntaxError);
    REQUIRE(e.position());
    CHECK(*e.position() == 4);
  }
  CHECK(code_of([] { parse(""); }) == Errc::SyntaxError);
  CHECK(code_of([] { parse("(a & b"); }) == Errc::SyntaxError);
  CHECK(code_of([] { parse("a b"); }) == Errc::SyntaxError);
  CHECK(code_of([] { parse("a | )"); }) == Errc::SyntaxError);
  try {
    parse("a & $");
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::UnknownToken);
    CHECK(*e.position() == 4);
  }
  CHECK(code_of([] { parse("1a"); }) == Errc::UnknownToken);
}

TEST_CASE("render is canonical") {
  CHECK(render(HistoryExpr::seq({ev("a"), ev("b")})) == "a & b");
  CHECK(render(parse("a&(b1|b2)&c")) == "a & (b1 | b2) & c");
  CHECK(render(parse("a | b")) == "(a | b)");
  CHECK(render(parse("(a & b) | c")) == "((a & b) | c)");
}

TEST_CASE("parse . render is the identity on generated ASTs") {
  std::mt19937_64 rng(41);
  for (int k = 0; k < 1000; ++k) {
    const HistoryExpr h = testutil::random_ast(rng, 4, 4);
    CHECK(parse(render(h)) == h);
  }
}

TEST_CASE("reverse") {
  CHECK(reverse(parse("a & b & c")) == parse("c & b & a"));
  CHECK(reverse(ev("a")) == ev("a"));
  CHECK(reverse(parse("a & (b1 | b2) & c")) == parse("c & (b1 | b2) & a"));
  CHECK(reverse(parse("(x & y) | z")) == parse("(y & x) | z"));

  std::mt19937_64 rng(43);
  for (int k = 0; k < 500; ++k) {
    const HistoryExpr h = testutil::random_ast(rng, 4, 4);
    CHECK(reverse(reverse(h)) == h);
  }
}

TEST_CASE("expand_paths") {
  const auto two = expand_paths(parse("a & (b1 | b2) & c"));
  REQUIRE(two.size() == 2);
  CHECK(two[0].events == std::vector<std::string>{"a", "b1", "c"});
  CHECK(two[1].events == std::vector<std::string>{"a", "b2", "c"});

  const auto one = expand_paths(parse("a & b"));
  REQUIRE(one.size() == 1);
  CHECK(one[0].events == std::vector<std::string>{"a", "b"});

  // Slots of sizes 2 and 3 against a brute-force Cartesian product.
  const HistoryExpr h = parse("s & (x1 | x2) & m & (y1 | y2 | y3) & t");
  const auto got = expand_paths(h);
  const auto expected = oracle::cartesian({{"s"}, {"x1", "x2"}, {"m"}, {"y1", "y2", "y3"}, {"t"}});
  REQUIRE(got.size() == 6);
  for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i].events == expected[i]);
}

TEST_CASE("expand_paths count and reversal properties") {
  std::mt19937_64 rng(47);
  for (int k = 0; k < 500; ++k) {
    const HistoryExpr h = testutil::random_ast(rng, 4, 3);
    const auto paths = expand_paths(h);
    CHECK(paths.size() == oracle::path_count(h));

    auto rev = expand_paths(reverse(h));
    std::vector<ElementaryPath> flipped;
    for (const auto& p : paths) flipped.push_back(reversed(p));
    std::sort(rev.begin(), rev.end());
    std::sort(flipped.begin(), flipped.end());
    CHECK(rev == flipped);
  }
}

TEST_CASE("endpoints") {
  auto [f1, l1] = endpoints(parse("a & b & c"));
  CHECK(f1 == ev("a"));
  CHECK(l1 == ev("c"));
  auto [f2, l2] = endpoints(ev("a"));
  CHECK(f2 == ev("a"));
  CHECK(l2 == ev("a"));
  auto [f3, l3] = endpoints(parse("(a1 | a2) & b"));
  CHECK(f3 == parse("a1 | a2"));
  CHECK(l3 == ev("b"));
  CHECK_FALSE(has_elementary_endpoints(parse("(a1 | a2) & b")));
  CHECK(has_elementary_endpoints(parse("a & (b1 | b2) & c")));
}

TEST_CASE("outline") {
  CHECK(outline(parse("a & (b | c)")) == "Seq\n  Event a\n  Alt\n    Event b\n    Event c\n");
}
