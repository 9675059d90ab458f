#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "qhist/ray.hpp"
#include "qhist/report.hpp"

namespace qhist {

// 2-D space with a at 0, b at theta, abar at π/2.
EventSpace polarizer_space(double theta);

// 3-D space with slits b1 = e1, b2 = e2, source a and screen point c.
// With commuting = true, a coincides with b1 so P_a commutes with both slits.
EventSpace double_slit_space(bool commuting);

// Polarizer history "(a & b) & abar". With sweep_steps, θ_k = k·(π/2)/steps
// for k = 0..steps.
EvalReport demo_polarizer(double theta, std::optional<std::size_t> sweep_steps);

EvalReport demo_double_slit(bool commuting);

// Face probabilities of an N-face die; with rotate, conditional probabilities
// of the faces rotated in the (f1, f2) plane.
EvalReport demo_die(std::size_t faces, std::optional<double> rotate);

struct SelfCheckSummary {
  std::size_t cases = 0;
  std::size_t failures = 0;
  double max_difference = 0.0;
};

// Representation-equivalence property suite over random histories.
SelfCheckSummary run_selfcheck(std::uint64_t seed, std::size_t cases);
EvalReport selfcheck_report(std::uint64_t seed, std::size_t cases);

}  // namespace qhist
