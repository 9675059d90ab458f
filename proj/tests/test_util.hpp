#pragma once

#include <doctest.h>

#include <random>
#include <string>
#include <vector>

#include "qhist/error.hpp"
#include "qhist/history.hpp"

namespace testutil {

// Error code thrown by fn; fails the test if nothing is thrown.
template <class Fn>
qhist::Errc code_of(Fn&& fn) {
  try {
    fn();
  } catch (const qhist::Error& e) {
    return e.code();
  }
  FAIL("expected qhist::Error");
  return qhist::Errc::InternalConsistency;
}

// Random AST in normal form, depth ≤ max_depth, every Seq/Alt of width 2..max_width.
inline qhist::HistoryExpr random_ast(std::mt19937_64& rng, int max_depth, int max_width,
                                     qhist::HistoryExpr::Kind parent = qhist::HistoryExpr::Kind::Event) {
  using K = qhist::HistoryExpr::Kind;
  std::uniform_int_distribution<int> coin(0, 2);
  std::uniform_int_distribution<int> name(0, 7);
  if (max_depth == 0 || coin(rng) == 0) {
    return qhist::HistoryExpr::event("e" + std::to_string(name(rng)));
  }
  K kind;
  if (parent == K::Seq) {
    kind = K::Alt;
  } else if (parent == K::Alt) {
    kind = K::Seq;
  } else {
    kind = coin(rng) % 2 ? K::Seq : K::Alt;
  }
  const int width = std::uniform_int_distribution<int>(2, max_width)(rng);
  std::vector<qhist::HistoryExpr> kids;
  for (int k = 0; k < width; ++k) kids.push_back(random_ast(rng, max_depth - 1, max_width, kind));
  return kind == K::Seq ? qhist::HistoryExpr::seq(std::move(kids)) : qhist::HistoryExpr::alt(std::move(kids));
}

}  // namespace testutil
