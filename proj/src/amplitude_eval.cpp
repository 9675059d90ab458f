#include "qhist/amplitude_eval.hpp"

#include <cmath>

#include "qhist/error.hpp"

namespace qhist {

namespace {

void require_elementary_endpoints(const HistoryExpr& h) {
  if (!has_elementary_endpoints(h)) {
    throw Error(Errc::AlternativeEndpoint,
                "history " + render(h) + " starts or ends in an alternative group; "
                "tr(Gamma) = A(g)A(g^-1) does not apply");
  }
}

}  // namespace

Complex path_amplitude(const ElementaryPath& p, const EventSpace& space) {
  if (p.events.empty()) return 1.0;
  // Resolve the first event even when there is no bracket to compute.
  const Ray* prev = &space.ray(p.events.front());
  Complex a = 1.0;
  for (std::size_t i = 1; i < p.events.size(); ++i) {
    const Ray* next = &space.ray(p.events[i]);
    a *= inner_product(*prev, *next);
    prev = next;
  }
  return a;
}

Amplitude amplitude_of(const HistoryExpr& h, const EventSpace& space) {
  // Sequential reduction in expansion order keeps the result bit-stable.
  Complex sum{};
  for (const auto& p : expand_paths(h)) sum += path_amplitude(p, space);
  return {sum, h};
}

double trace_via_amplitudes(const HistoryExpr& h, const EventSpace& space) {
  require_elementary_endpoints(h);
  const Complex v = amplitude_of(h, space).value * amplitude_of(reverse(h), space).value;
  if (std::abs(v.imag()) > 1e-10) {
    throw Error(Errc::InternalConsistency,
                "A(g)A(g^-1) has imaginary residue " + std::to_string(v.imag()));
  }
  return v.real();
}

std::vector<ClosedLoop> closed_loops(const HistoryExpr& h, const EventSpace& space) {
  require_elementary_endpoints(h);
  const auto forward = expand_paths(h);
  const auto backward = expand_paths(reverse(h));

  std::vector<Complex> back_amp;
  back_amp.reserve(backward.size());
  for (const auto& b : backward) back_amp.push_back(path_amplitude(b, space));

  std::vector<ClosedLoop> loops;
  loops.reserve(forward.size() * backward.size());
  for (const auto& f : forward) {
    const Complex fa = path_amplitude(f, space);
    const ElementaryPath retrace = reversed(f);
    for (std::size_t j = 0; j < backward.size(); ++j) {
      loops.push_back({f, backward[j], fa * back_amp[j], backward[j] == retrace});
    }
  }
  return loops;
}

}  // namespace qhist
