#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracle.hpp"
#include "qhist/amplitude_eval.hpp"
#include "qhist/projector_eval.hpp"
#include "qhist/random.hpp"
#include "test_util.hpp"

using namespace qhist;
using testutil::code_of;

namespace {

EventSpace slit_space(std::uint64_t seed) {
  Rng rng(seed);
  EventSpace s(3);
  s.add("a", random_ray(rng, 3));
  s.add("b", random_ray(rng, 3));
  s.add("c", random_ray(rng, 3));
  const auto basis = basis_columns(random_unitary(rng, 3));
  s.add("b1", basis[0]);
  s.add("b2", basis[1]);
  s.add("b3", basis[2]);
  return s;
}

oracle::C br(const EventSpace& s, const char* x, const char* y) {
  return oracle::bracket(oracle::from(s.ray(x)), oracle::from(s.ray(y)));
}

}  // namespace

TEST_CASE("path amplitudes are products of brackets") {
  const EventSpace s = slit_space(3);
  CHECK(std::abs(path_amplitude({{"a"}}, s) - 1.0) < 1e-15);
  CHECK(std::abs(path_amplitude({{"a", "b"}}, s) - br(s, "a", "b")) < 1e-15);
  CHECK(std::abs(path_amplitude({{"a", "b", "c"}}, s) - br(s, "a", "b") * br(s, "b", "c")) < 1e-15);
  CHECK(code_of([&] { path_amplitude({{"a", "nope"}}, s); }) == Errc::UnknownEvent);
}

TEST_CASE("amplitudes of the standard history shapes") {
  const EventSpace s = slit_space(5);
  // (a ⊓ b) ⊓ c → ⟨a|b⟩⟨b|c⟩
  CHECK(std::abs(amplitude_of(parse("(a & b) & c"), s).value - br(s, "a", "b") * br(s, "b", "c")) < 1e-15);
  // [a ⊓ (b1 ⊔ b2)] ⊓ c → ⟨a|b1⟩⟨b1|c⟩ + ⟨a|b2⟩⟨b2|c⟩
  const oracle::C expected = br(s, "a", "b1") * br(s, "b1", "c") + br(s, "a", "b2") * br(s, "b2", "c");
  CHECK(std::abs(amplitude_of(parse("a & (b1 | b2) & c"), s).value - expected) < 1e-15);
  // Summing over a complete basis gives back ⟨a|c⟩.
  CHECK(std::abs(amplitude_of(parse("a & (b1 | b2 | b3) & c"), s).value - br(s, "a", "c")) < 1e-12);
}

TEST_CASE("tr Γ = A(γ) A(γ⁻¹) on random histories") {
  Rng rng(2024);
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const RandomHistory rh = random_history(rng);
    const double via_proj = trace(gamma_of(rh.history, rh.space).gamma).real();
    const double via_amp = trace_via_amplitudes(rh.history, rh.space);
    worst = std::max(worst, std::abs(via_proj - via_amp));
    // Amplitude of the reverse is the conjugate.
    const Complex fwd = amplitude_of(rh.history, rh.space).value;
    const Complex bwd = amplitude_of(reverse(rh.history), rh.space).value;
    CHECK(std::abs(bwd - std::conj(fwd)) < 1e-12);
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("closed loops of the two-slit history") {
  const EventSpace s = slit_space(11);
  const HistoryExpr h = parse("a & (b1 | b2) & c");
  const auto loops = closed_loops(h, s);
  REQUIRE(loops.size() == 4);

  int direct = 0;
  Complex total = 0.0, cross = 0.0;
  for (const auto& l : loops) {
    CHECK(l.forward.events.front() == "a");
    CHECK(l.forward.events.back() == "c");
    CHECK(l.backward.events.front() == "c");
    CHECK(l.backward.events.back() == "a");
    CHECK(std::abs(l.amplitude - path_amplitude(l.forward, s) * path_amplitude(l.backward, s)) < 1e-15);
    CHECK(l.direct == (l.backward == reversed(l.forward)));
    if (l.direct) {
      ++direct;
      CHECK(std::abs(l.amplitude.imag()) < 1e-15);
      CHECK(l.amplitude.real() >= 0.0);
    } else {
      cross += l.amplitude;
    }
    total += l.amplitude;
  }
  CHECK(direct == 2);
  CHECK(std::abs(total - trace(gamma_of(h, s).gamma)) < 1e-12);
  CHECK(std::abs(cross - trace(interference_split(h, s).interference)) < 1e-12);
  // The two interference loops are conjugates.
  CHECK(std::abs(cross.imag()) < 1e-12);
}

TEST_CASE("closed loops without alternatives") {
  const EventSpace s = slit_space(13);
  const auto loops = closed_loops(parse("a & b & c"), s);
  REQUIRE(loops.size() == 1);
  CHECK(loops[0].direct);
  CHECK(std::abs(loops[0].amplitude - certainty_of(parse("a & b & c"), s)) < 1e-12);
}

TEST_CASE("alternative endpoints are rejected by the amplitude cross-check") {
  const EventSpace s = slit_space(17);
  CHECK(code_of([&] { trace_via_amplitudes(parse("(b1 | b2) & c"), s); }) == Errc::AlternativeEndpoint);
  CHECK(code_of([&] { trace_via_amplitudes(parse("a & (b1 | b2)"), s); }) == Errc::AlternativeEndpoint);
  CHECK(code_of([&] { closed_loops(parse("a & (b1 | b2)"), s); }) == Errc::AlternativeEndpoint);
  // Plain amplitude is still defined.
  const Complex amp = amplitude_of(parse("a & (b1 | b2)"), s).value;
  CHECK(std::abs(amp - (br(s, "a", "b1") + br(s, "a", "b2"))) < 1e-15);
}

TEST_CASE("polarizer amplitude") {
  EventSpace s(2);
  const double t = 0.7;
  s.add("a", planar_ray(0.0));
  s.add("b", planar_ray(t));
  s.add("abar", planar_ray(std::numbers::pi / 2));
  const Complex amp = amplitude_of(parse("a & b & abar"), s).value;
  CHECK(std::abs(amp - std::cos(t) * std::sin(t)) < 1e-15);
  CHECK(std::abs(trace_via_amplitudes(parse("a & b & abar"), s) - std::pow(std::cos(t) * std::sin(t), 2)) < 1e-15);
}
