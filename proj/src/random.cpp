#include "qhist/random.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace qhist {

namespace {

Complex gaussian(Rng& rng) {
  std::normal_distribution<double> d(0.0, 1.0);
  const double re = d(rng);
  const double im = d(rng);
  return {re, im};
}

std::size_t uniform_index(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

}  // namespace

Ray random_ray(Rng& rng, std::size_t n) {
  std::vector<Complex> v(n);
  double norm2 = 0.0;
  do {
    norm2 = 0.0;
    for (auto& c : v) {
      c = gaussian(rng);
      norm2 += std::norm(c);
    }
  } while (norm2 < 1e-8);
  const double norm = std::sqrt(norm2);
  for (auto& c : v) c /= norm;
  return make_ray(v);
}

Operator random_unitary(Rng& rng, std::size_t n) {
  for (;;) {
    Operator u(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) u(i, j) = gaussian(rng);

    bool degenerate = false;
    // Modified Gram-Schmidt on columns, two passes for stability.
    for (std::size_t j = 0; j < n && !degenerate; ++j) {
      for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t k = 0; k < j; ++k) {
          Complex dot{};
          for (std::size_t i = 0; i < n; ++i) dot += std::conj(u(i, k)) * u(i, j);
          for (std::size_t i = 0; i < n; ++i) u(i, j) -= dot * u(i, k);
        }
      }
      double norm2 = 0.0;
      for (std::size_t i = 0; i < n; ++i) norm2 += std::norm(u(i, j));
      if (norm2 < 1e-12) {
        degenerate = true;
        break;
      }
      const double norm = std::sqrt(norm2);
      for (std::size_t i = 0; i < n; ++i) u(i, j) /= norm;
    }
    if (!degenerate) return u;
  }
}

std::vector<Ray> basis_columns(const Operator& u) {
  std::vector<Ray> out;
  out.reserve(u.dim());
  std::vector<Complex> col(u.dim());
  for (std::size_t j = 0; j < u.dim(); ++j) {
    for (std::size_t i = 0; i < u.dim(); ++i) col[i] = u(i, j);
    out.push_back(make_ray(col));
  }
  return out;
}

RandomHistory random_history(Rng& rng, const RandomHistoryParams& params) {
  const std::size_t n = uniform_index(rng, params.min_dim, params.max_dim);
  const std::size_t slots = uniform_index(rng, params.min_slots, params.max_slots);

  RandomHistory out{EventSpace(n), HistoryExpr::event("e0")};
  std::size_t next_id = 0;
  auto add_event = [&](const Ray& r) {
    std::string name = "e" + std::to_string(next_id++);
    out.space.add(name, r);
    return HistoryExpr::event(std::move(name));
  };

  std::vector<HistoryExpr> steps;
  steps.reserve(slots);
  for (std::size_t s = 0; s < slots; ++s) {
    const bool endpoint = (s == 0 || s + 1 == slots);
    const std::size_t width = endpoint ? 1 : uniform_index(rng, 1, std::min(params.max_alt, n));
    if (width == 1) {
      steps.push_back(add_event(random_ray(rng, n)));
      continue;
    }
    // Distinct columns of one random unitary are mutually orthogonal.
    const auto basis = basis_columns(random_unitary(rng, n));
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::shuffle(idx.begin(), idx.end(), rng);
    std::vector<HistoryExpr> branches;
    for (std::size_t b = 0; b < width; ++b) branches.push_back(add_event(basis[idx[b]]));
    steps.push_back(HistoryExpr::alt(std::move(branches)));
  }
  out.history = HistoryExpr::seq(std::move(steps));
  return out;
}

}  // namespace qhist
