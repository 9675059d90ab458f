#include "qhist/projector_eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "qhist/error.hpp"

namespace qhist {

namespace {

std::vector<HistoryExpr> slots_of(const HistoryExpr& h) {
  if (h.is_seq()) return h.children();
  return {h};
}

void check_alternatives(const HistoryExpr& slot, const EventSpace& space, const EvalOptions& opts,
                        std::vector<std::string>& warnings) {
  if (!slot.is_alt()) return;
  const double overlap = max_branch_overlap(slot, space);
  if (overlap <= kInputTol) return;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3e", overlap);
  const std::string msg = "alternatives " + render(slot) +
                          " are not mutually orthogonal (max |<b_i|b_j>| = " + buf + ")";
  if (opts.strict) throw Error(Errc::NonOrthogonalAlternatives, msg);
  warnings.push_back(msg);
}

}  // namespace

Operator slot_operator(const HistoryExpr& slot, const EventSpace& space) {
  switch (slot.kind()) {
    case HistoryExpr::Kind::Event:
      return space.projector(slot.name());
    case HistoryExpr::Kind::Alt: {
      Operator sum(space.dimension());
      for (const auto& b : slot.children()) {
        if (!b.is_event()) {
          throw Error(Errc::NestedSequenceInSlot,
                      "alternative branch " + render(b) + " is not a single event");
        }
        sum += space.projector(b.name());
      }
      return sum;
    }
    case HistoryExpr::Kind::Seq:
      break;
  }
  throw Error(Errc::NestedSequenceInSlot, "slot " + render(slot) + " is a sequence");
}

double max_branch_overlap(const HistoryExpr& alt, const EventSpace& space) {
  if (!alt.is_alt()) return 0.0;
  const auto& bs = alt.children();
  double worst = 0.0;
  for (std::size_t i = 0; i < bs.size(); ++i) {
    if (!bs[i].is_event()) {
      throw Error(Errc::NestedSequenceInSlot,
                  "alternative branch " + render(bs[i]) + " is not a single event");
    }
    for (std::size_t j = i + 1; j < bs.size(); ++j) {
      if (!bs[j].is_event()) continue;
      worst = std::max(worst, std::abs(inner_product(space.ray(bs[i].name()), space.ray(bs[j].name()))));
    }
  }
  return worst;
}

HistoryOperator gamma_of(const HistoryExpr& h, const EventSpace& space, const EvalOptions& opts) {
  HistoryOperator result{Operator(space.dimension()), h, {}};
  const auto slots = slots_of(h);

  std::vector<Operator> q;
  q.reserve(slots.size());
  for (const auto& s : slots) {
    q.push_back(slot_operator(s, space));
    check_alternatives(s, space, opts, result.warnings);
  }

  // Build outward from the first slot: Γ_k = Q_k Γ_{k-1} Q_k.
  Operator g = q.front();
  for (std::size_t k = 1; k < q.size(); ++k) g = q[k] * g * q[k];
  result.gamma = std::move(g);
  return result;
}

double certainty_of(const HistoryExpr& h, const EventSpace& space, const EvalOptions& opts) {
  const HistoryOperator hop = gamma_of(h, space, opts);
  const Complex t = trace(hop.gamma);
  if (std::abs(t.imag()) > kInputTol) {
    throw Error(Errc::InternalConsistency,
                "tr(Gamma) has imaginary residue " + std::to_string(t.imag()));
  }
  double lambda = t.real();
  if (has_elementary_endpoints(h) && hop.warnings.empty()) {
    lambda = std::clamp(lambda, 0.0, 1.0 + kInputTol);
  }
  return lambda;
}

InterferenceSplit interference_split(const HistoryExpr& h, const EventSpace& space,
                                     const EvalOptions& opts) {
  const auto slots = slots_of(h);
  const bool any_alt = std::any_of(slots.begin(), slots.end(), [](const HistoryExpr& s) { return s.is_alt(); });
  if (!any_alt) {
    throw Error(Errc::NoAlternatives, "history " + render(h) + " has no alternatives to interfere");
  }
  if (!has_elementary_endpoints(h)) {
    throw Error(Errc::AlternativeEndpoint,
                "interference split needs elementary endpoints, got " + render(h));
  }

  InterferenceSplit split;
  split.full = gamma_of(h, space, opts).gamma;
  split.interference = split.full;
  for (auto& path : expand_paths(h)) {
    Operator direct = gamma_of(to_history(path), space, opts).gamma;
    split.interference -= direct;
    split.direct_terms.emplace_back(std::move(path), std::move(direct));
  }
  return split;
}

}  // namespace qhist
