#include "qhist/probability.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "qhist/amplitude_eval.hpp"
#include "qhist/error.hpp"

namespace qhist {

namespace {

constexpr double kForbiddenTol = 1e-12;

double real_trace(const Operator& g) {
  const Complex t = trace(g);
  if (std::abs(t.imag()) > kInputTol) {
    throw Error(Errc::InternalConsistency, "trace has imaginary residue " + std::to_string(t.imag()));
  }
  return t.real();
}

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

void cross_check(double projector_value, double amplitude_value, const char* what) {
  const double diff = std::abs(projector_value - amplitude_value);
  if (diff > kCrossCheckTol) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s: projector %.17g vs amplitude %.17g (|diff| = %.3e)", what,
                  projector_value, amplitude_value, diff);
    throw Error(Errc::InternalConsistency, buf);
  }
}

}  // namespace

ProbabilityResult absolute_probability(const HistoryExpr& h, const EventSpace& space,
                                       const EvalOptions& opts) {
  const HistoryOperator hop = gamma_of(h, space, opts);
  const double n = static_cast<double>(space.dimension());

  ProbabilityResult r;
  r.kind = ProbabilityKind::Absolute;
  r.numerator = real_trace(hop.gamma);
  r.denominator = n;
  r.value = clamp01(r.raw());
  r.warnings = hop.warnings;
  if (has_elementary_endpoints(h)) {
    r.amplitude_value = trace_via_amplitudes(h, space) / n;
    cross_check(r.raw(), *r.amplitude_value, "absolute probability");
  }
  return r;
}

ProbabilityResult conditional_probability(const HistoryExpr& h, const EventSpace& space,
                                          const EvalOptions& opts) {
  const auto [first, last] = endpoints(h);
  if (!first.is_event()) {
    throw Error(Errc::AlternativeEndpoint,
                "conditional probability needs a history beginning at a single event, got " + render(h));
  }
  const HistoryOperator hop = gamma_of(h, space, opts);
  const double n = static_cast<double>(space.dimension());

  ProbabilityResult r;
  r.kind = ProbabilityKind::Conditional;
  // p(γ ⊓ a) / p(a) with p(a) = tr(P_a)/N = 1/N.
  r.numerator = real_trace(hop.gamma) / n;
  r.denominator = real_trace(space.projector(first.name())) / n;
  r.value = clamp01(r.raw());
  r.warnings = hop.warnings;
  if (last.is_event()) {
    r.amplitude_value = trace_via_amplitudes(h, space);
    cross_check(r.raw(), *r.amplitude_value, "conditional probability");
  }
  return r;
}

Operator actualize(const HistoryExpr& h, const EventSpace& space, const EvalOptions& opts) {
  const auto last = endpoints(h).second;
  if (!last.is_event()) {
    throw Error(Errc::AlternativeEndpoint, "actualization needs a single final event, got " + render(h));
  }
  const Operator g = gamma_of(h, space, opts).gamma;
  const double t = real_trace(g);
  if (t <= kForbiddenTol) {
    throw Error(Errc::ForbiddenHistory,
                "history " + render(h) + " has zero probability (tr Gamma = " + std::to_string(t) + ")");
  }
  Operator psi = (1.0 / t) * g;
  const double dev = max_abs_diff(psi, space.projector(last.name()));
  if (dev > kCrossCheckTol) {
    throw Error(Errc::InternalConsistency,
                "actualized operator differs from P_" + last.name() + " by " + std::to_string(dev));
  }
  return psi;
}

MemoryLossResult memory_loss_check(const std::string& a, const std::string& b, const std::string& c,
                                   const EventSpace& space) {
  const Operator& pa = space.projector(a);
  const Operator& pb = space.projector(b);
  const Operator& pc = space.projector(c);

  const Operator bab = pb * pa * pb;
  const double denom = real_trace(bab);
  if (denom <= kForbiddenTol) {
    throw Error(Errc::ForbiddenHistory, "cannot condition on " + a + " & " + b + ": tr(P_b P_a P_b) = " +
                                            std::to_string(denom));
  }
  MemoryLossResult r;
  r.given_history = real_trace(pc * bab * pc) / denom;
  r.given_last = real_trace(pc * pb * pc);
  return r;
}

std::string face_name(std::size_t index) { return "f" + std::to_string(index); }

QuantumDie make_die(std::size_t n) {
  if (n < 2 || n > kMaxDimension) {
    throw Error(Errc::DimensionOutOfRange,
                "die needs between 2 and " + std::to_string(kMaxDimension) + " faces, got " + std::to_string(n));
  }
  QuantumDie die{EventSpace(n)};
  for (std::size_t k = 0; k < n; ++k) die.space.add(face_name(k + 1), basis_ray(n, k));
  return die;
}

double rotated_face_probability(const QuantumDie& die, std::size_t i, const Operator& u, std::size_t j) {
  const std::size_t n = die.faces();
  if (i < 1 || i > n || j < 1 || j > n) {
    throw Error(Errc::IndexOutOfRange, "face index out of range [1, " + std::to_string(n) + "]");
  }
  const Projector& pi = die.space.projector(face_name(i));
  const Projector rotated = conjugate_projector(die.space.projector(face_name(j)), u);
  return real_trace(rotated.op() * pi.op() * rotated.op()) / real_trace(pi);
}

}  // namespace qhist
