#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qhist/history.hpp"
#include "qhist/operator.hpp"
#include "qhist/ray.hpp"

namespace qhist {

struct EvalOptions {
  // Strict: non-orthogonal branches inside one Alt group are an error.
  // Lenient: they produce a warning.
  bool strict = true;
};

/// Γ(γ) together with the history it represents.
struct HistoryOperator {
  Operator gamma;
  HistoryExpr history;
  std::vector<std::string> warnings;
};

struct InterferenceSplit {
  std::vector<std::pair<ElementaryPath, Operator>> direct_terms;
  Operator interference;
  Operator full;
};

// Projector for an event, sum of branch projectors for an Alt of events.
// Throws NestedSequenceInSlot, UnknownEvent.
Operator slot_operator(const HistoryExpr& slot, const EventSpace& space);

// Largest |⟨b_i|b_j⟩|, i ≠ j, over the branches of an Alt of events.
double max_branch_overlap(const HistoryExpr& alt, const EventSpace& space);

// Sandwich rule: Γ = Q_n ⋯ Q_2 Q_1 Q_2 ⋯ Q_n for slot operators Q_1..Q_n.
HistoryOperator gamma_of(const HistoryExpr& h, const EventSpace& space, const EvalOptions& opts = {});

// λ(γ) = tr Γ. Throws InternalConsistency if the imaginary residue exceeds
// kInputTol. Clamped to [0, 1 + 1e-9] for elementary-endpoint histories with
// orthogonal alternatives; returned raw otherwise.
double certainty_of(const HistoryExpr& h, const EventSpace& space, const EvalOptions& opts = {});

// Direct Γ of every expanded path and the remainder Γ(full) − Σ direct.
// Throws NoAlternatives, AlternativeEndpoint.
InterferenceSplit interference_split(const HistoryExpr& h, const EventSpace& space,
                                     const EvalOptions& opts = {});

}  // namespace qhist
