#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "qhist/history.hpp"
#include "qhist/operator.hpp"
#include "qhist/ray.hpp"

namespace qhist {

using Rng = std::mt19937_64;

// Uniformly distributed (Haar-like) unit vector: normalized complex Gaussian.
Ray random_ray(Rng& rng, std::size_t n);

// Gram-Schmidt orthonormalization of a complex Gaussian matrix; the columns
// form a random orthonormal basis.
Operator random_unitary(Rng& rng, std::size_t n);

// Columns of u as rays.
std::vector<Ray> basis_columns(const Operator& u);

struct RandomHistoryParams {
  std::size_t min_dim = 2;
  std::size_t max_dim = 8;
  std::size_t min_slots = 2;
  std::size_t max_slots = 6;
  std::size_t max_alt = 3;
};

/// A random history with elementary endpoints and orthogonal Alt groups,
/// together with the event space it refers to.
struct RandomHistory {
  EventSpace space;
  HistoryExpr history;
};

RandomHistory random_history(Rng& rng, const RandomHistoryParams& params = {});

}  // namespace qhist
