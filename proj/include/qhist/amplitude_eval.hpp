#pragma once

#include <vector>

#include "qhist/history.hpp"
#include "qhist/operator.hpp"
#include "qhist/ray.hpp"

namespace qhist {

struct Amplitude {
  Complex value;
  HistoryExpr history;
};

/// A forward path followed by a path that returns to its start.
struct ClosedLoop {
  ElementaryPath forward;
  ElementaryPath backward;
  Complex amplitude;
  // backward retraces forward exactly; otherwise the loop is an interference loop.
  bool direct = false;
};

// Π ⟨e_i|e_{i+1}⟩ over consecutive pairs; 1 for a single event.
Complex path_amplitude(const ElementaryPath& p, const EventSpace& space);

// Σ path_amplitude over expand_paths(h).
Amplitude amplitude_of(const HistoryExpr& h, const EventSpace& space);

// A(γ)·A(γ⁻¹). Throws AlternativeEndpoint when an endpoint is an Alt group,
// InternalConsistency when the imaginary residue exceeds 1e-10.
double trace_via_amplitudes(const HistoryExpr& h, const EventSpace& space);

// All (forward, backward) pairs from expand_paths(h) × expand_paths(reverse(h)).
// Throws AlternativeEndpoint.
std::vector<ClosedLoop> closed_loops(const HistoryExpr& h, const EventSpace& space);

}  // namespace qhist
