#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qhist/history.hpp"
#include "qhist/operator.hpp"
#include "qhist/projector_eval.hpp"
#include "qhist/ray.hpp"

namespace qhist {

enum class ProbabilityKind { Absolute, Conditional };

struct ProbabilityResult {
  double value = 0.0;  // numerator / denominator, clamped to [0, 1]
  ProbabilityKind kind = ProbabilityKind::Absolute;
  double numerator = 0.0;
  double denominator = 1.0;
  // Same probability through the amplitude representation, when the history
  // has elementary endpoints.
  std::optional<double> amplitude_value;
  std::vector<std::string> warnings;

  double raw() const { return numerator / denominator; }
};

// Tolerance for the projector/amplitude cross-check.
inline constexpr double kCrossCheckTol = 1e-10;

// p(γ/I) = tr Γ / N, cross-checked against A(γ)A(γ⁻¹)/N.
ProbabilityResult absolute_probability(const HistoryExpr& h, const EventSpace& space,
                                       const EvalOptions& opts = {});

// p(γ/a) = p(γ ⊓ a)/p(a) = tr Γ for a history beginning at elementary event a.
// Throws AlternativeEndpoint when the first step is not a single event.
ProbabilityResult conditional_probability(const HistoryExpr& h, const EventSpace& space,
                                          const EvalOptions& opts = {});

// Γ/tr Γ. Requires an elementary final event and tr Γ > 1e-12.
// Throws ForbiddenHistory, AlternativeEndpoint, InternalConsistency (result
// not equal to the final projector within 1e-10).
Operator actualize(const HistoryExpr& h, const EventSpace& space, const EvalOptions& opts = {});

struct MemoryLossResult {
  double given_history = 0.0;  // p(c / a ⊓ b)
  double given_last = 0.0;     // p(c / b)
};

// Throws ForbiddenHistory when tr(P_b P_a P_b) ≤ 1e-12.
MemoryLossResult memory_loss_check(const std::string& a, const std::string& b, const std::string& c,
                                   const EventSpace& space);

/// N-level system whose faces f1..fN are the standard basis.
struct QuantumDie {
  EventSpace space;

  std::size_t faces() const { return space.dimension(); }
};

// Face name for a 1-based face index: "f1", "f2", ...
std::string face_name(std::size_t index);

// Throws DimensionOutOfRange unless 2 ≤ n ≤ 64.
QuantumDie make_die(std::size_t n);

// Probability of obtaining the rotated face U(f_j) given face f_i came out:
// tr(P' P_fi P') / tr(P_fi) with P' = U P_fj U⁻¹. Face indices are 1-based.
// Throws NotUnitary, IndexOutOfRange.
double rotated_face_probability(const QuantumDie& die, std::size_t i, const Operator& u, std::size_t j);

}  // namespace qhist
