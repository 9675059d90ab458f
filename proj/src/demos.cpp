#include "qhist/demos.hpp"

#include <cmath>
#include <numbers>

#include "qhist/amplitude_eval.hpp"
#include "qhist/error.hpp"
#include "qhist/history.hpp"
#include "qhist/probability.hpp"
#include "qhist/projector_eval.hpp"
#include "qhist/random.hpp"

namespace qhist {

namespace {

void flag_checks(ReportEntry& e, double tol) {
  for (const auto& c : e.checks) {
    if (c.difference > tol) {
      e.error = Errc::InternalConsistency;
      e.message = c.name + ": representations differ by " + format_full(c.difference);
      return;
    }
  }
}

double polarizer_analytic(double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return c * c * s * s;
}

}  // namespace

EventSpace polarizer_space(double theta) {
  EventSpace space(2);
  space.add("a", planar_ray(0.0));
  space.add("b", planar_ray(theta));
  space.add("abar", planar_ray(std::numbers::pi / 2));
  return space;
}

EventSpace double_slit_space(bool commuting) {
  const double r3 = 1.0 / std::sqrt(3.0);
  EventSpace space(3);
  if (commuting) {
    space.add("a", basis_ray(3, 0));
  } else {
    space.add("a", make_ray({r3, r3, r3}));
  }
  space.add("b1", basis_ray(3, 0));
  space.add("b2", basis_ray(3, 1));
  space.add("c", make_ray({2.0 / 3.0, -1.0 / 3.0, 2.0 / 3.0}));
  return space;
}

EvalReport demo_polarizer(double theta, std::optional<std::size_t> sweep_steps) {
  const HistoryExpr h = parse("(a & b) & abar");
  EvalReport r;
  r.title = "polarizer";
  r.header.push_back({"history", render(h)});

  auto evaluate = [&](double th, ReportEntry& e) {
    const EventSpace space = polarizer_space(th);
    const double lambda = certainty_of(h, space);
    const double amp = trace_via_amplitudes(h, space);
    e.checks.push_back(make_check("theta=" + format_full(th), lambda, amp));
    return lambda;
  };

  ReportEntry e;
  e.kind = "certainty";
  e.target = render(h);
  try {
    if (!sweep_steps) {
      e.id = "1";
      const double lambda = evaluate(theta, e);
      const double analytic = polarizer_analytic(theta);
      e.fields.push_back({"theta", theta});
      e.fields.push_back({"certainty", lambda});
      e.fields.push_back({"cos^2 sin^2", analytic});
      e.fields.push_back({"|diff|", std::abs(lambda - analytic)});
    } else {
      const std::size_t steps = std::max<std::size_t>(*sweep_steps, 1);
      e.id = "sweep";
      Table t{"sweep", {"theta", "certainty", "cos^2 sin^2", "|diff|"}, {}};
      double worst = 0.0;
      for (std::size_t k = 0; k <= steps; ++k) {
        const double th = static_cast<double>(k) * (std::numbers::pi / 2) / static_cast<double>(steps);
        const double lambda = evaluate(th, e);
        const double analytic = polarizer_analytic(th);
        worst = std::max(worst, std::abs(lambda - analytic));
        t.rows.push_back({th, lambda, analytic, std::abs(lambda - analytic)});
      }
      e.fields.push_back({"steps", static_cast<std::int64_t>(steps)});
      e.fields.push_back({"max |diff|", worst});
      e.tables.push_back(std::move(t));
    }
    flag_checks(e, kCrossCheckTol);
  } catch (const Error& err) {
    e.error = err.code();
    e.message = err.what();
  }
  r.entries.push_back(std::move(e));
  return r;
}

EvalReport demo_double_slit(bool commuting) {
  const EventSpace space = double_slit_space(commuting);
  const HistoryExpr h = parse("a & (b1 | b2) & c");
  EvalReport r;
  r.title = commuting ? "double slit (commuting source)" : "double slit";
  r.header.push_back({"history", render(h)});
  r.header.push_back({"dimension", static_cast<std::int64_t>(space.dimension())});

  ReportEntry dec;
  dec.id = "1";
  dec.kind = "interference";
  dec.target = render(h);
  ReportEntry lp;
  lp.id = "2";
  lp.kind = "loops";
  lp.target = render(h);
  ReportEntry pr;
  pr.id = "3";
  pr.kind = "probability";
  pr.target = render(h);

  try {
    const InterferenceSplit split = interference_split(h, space);
    Operator recon = split.interference;
    for (const auto& [path, op] : split.direct_terms) recon += op;

    dec.fields.push_back({"Gamma", split.full});
    for (const auto& [path, op] : split.direct_terms) dec.fields.push_back({"Gamma[" + to_string(path) + "]", op});
    dec.fields.push_back({"I", split.interference});
    dec.fields.push_back({"reconstruction error", max_abs_diff(recon, split.full)});
    dec.fields.push_back({"tr(I)", trace(split.interference).real()});

    const auto loops = closed_loops(h, space);
    Table t{"closed loops", {"forward", "backward", "kind", "amplitude"}, {}};
    Complex interference_sum{};
    for (const auto& l : loops) {
      t.rows.push_back({to_string(l.forward), to_string(l.backward),
                        std::string(l.direct ? "direct" : "interference"), l.amplitude});
      if (!l.direct) {
        interference_sum += l.amplitude;
        ElementaryPath closed = l.forward;
        closed.events.insert(closed.events.end(), l.backward.events.begin() + 1, l.backward.events.end());
        lp.fields.push_back({"A(" + to_string(closed) + ")", l.amplitude});
      }
    }
    lp.tables.push_back(std::move(t));
    lp.checks.push_back(make_check("tr(I)", trace(split.interference).real(), interference_sum.real()));
    dec.checks.push_back(make_check("tr(I)", trace(split.interference).real(), interference_sum.real()));

    const double n = static_cast<double>(space.dimension());
    const ProbabilityResult total = conditional_probability(h, space);
    double boolean_sum = 0.0;
    for (const auto& [path, op] : split.direct_terms) boolean_sum += trace(op).real();
    pr.fields.push_back({"p(g/a)", total.raw()});
    pr.fields.push_back({"sum over single-slit paths", boolean_sum});
    pr.fields.push_back({"interference contribution", total.raw() - boolean_sum});
    pr.fields.push_back({"p(g/I)", absolute_probability(h, space).raw()});
    pr.fields.push_back({"|A(g)|^2 / N", trace_via_amplitudes(h, space) / n});
    pr.checks.push_back(make_check("p(g/a)", total.raw(), *total.amplitude_value));

    flag_checks(dec, kExactTol);
    flag_checks(lp, kExactTol);
    flag_checks(pr, kCrossCheckTol);
  } catch (const Error& err) {
    dec.error = err.code();
    dec.message = err.what();
  }
  r.entries.push_back(std::move(dec));
  r.entries.push_back(std::move(lp));
  r.entries.push_back(std::move(pr));
  return r;
}

EvalReport demo_die(std::size_t faces, std::optional<double> rotate) {
  EvalReport r;
  r.title = "quantum die";
  r.header.push_back({"faces", static_cast<std::int64_t>(faces)});

  ReportEntry fe;
  fe.id = "1";
  fe.kind = "absolute_prob";
  fe.target = "faces";
  try {
    const QuantumDie die = make_die(faces);
    Table t{"face probabilities", {"face", "p(f/I)", "1/N", "|diff|"}, {}};
    double sum = 0.0;
    const double uniform = 1.0 / static_cast<double>(faces);
    for (std::size_t k = 1; k <= faces; ++k) {
      const double p = absolute_probability(HistoryExpr::event(face_name(k)), die.space).value;
      sum += p;
      t.rows.push_back({face_name(k), p, uniform, std::abs(p - uniform)});
    }
    fe.tables.push_back(std::move(t));
    fe.fields.push_back({"sum", sum});
    r.entries.push_back(std::move(fe));

    if (rotate) {
      const double theta = *rotate;
      const Operator u = plane_rotation(faces, 0, 1, theta);
      r.header.push_back({"rotation angle", theta});

      // Rotated faces R(f_j) registered as events, for the history route.
      EventSpace rotated = die.space;
      for (std::size_t j = 1; j <= faces; ++j) {
        std::vector<Complex> col(faces);
        for (std::size_t i = 0; i < faces; ++i) col[i] = u(i, j - 1);
        rotated.add("R" + face_name(j), make_ray(col));
      }

      ReportEntry re;
      re.id = "2";
      re.kind = "conditional_prob";
      re.target = "rotated faces";
      std::vector<std::string> cols{"given"};
      for (std::size_t j = 1; j <= faces; ++j) cols.push_back("R(" + face_name(j) + ")");
      cols.push_back("row sum");
      Table t2{"p(R(f_j)/f_i)", cols, {}};
      for (std::size_t i = 1; i <= faces; ++i) {
        std::vector<Value> row{face_name(i)};
        double row_sum = 0.0;
        for (std::size_t j = 1; j <= faces; ++j) {
          const double p = rotated_face_probability(die, i, u, j);
          row_sum += p;
          row.push_back(p);
          const HistoryExpr h = HistoryExpr::seq({HistoryExpr::event(face_name(i)), HistoryExpr::event("R" + face_name(j))});
          const ProbabilityResult cp = conditional_probability(h, rotated);
          re.checks.push_back(make_check("p(R(" + face_name(j) + ")/" + face_name(i) + ")", p, *cp.amplitude_value));
        }
        row.push_back(row_sum);
        t2.rows.push_back(std::move(row));
      }
      re.tables.push_back(std::move(t2));
      const double born = std::cos(theta) * std::cos(theta);
      const double same = rotated_face_probability(die, 1, u, 1);
      re.fields.push_back({"p(R(f1)/f1)", same});
      re.fields.push_back({"cos^2 theta", born});
      re.fields.push_back({"|diff|", std::abs(same - born)});
      flag_checks(re, kCrossCheckTol);
      r.entries.push_back(std::move(re));
    }
  } catch (const Error& err) {
    ReportEntry failed;
    failed.id = std::to_string(r.entries.size() + 1);
    failed.kind = r.entries.empty() ? "absolute_prob" : "conditional_prob";
    failed.error = err.code();
    failed.message = err.what();
    r.entries.push_back(std::move(failed));
  }
  return r;
}

SelfCheckSummary run_selfcheck(std::uint64_t seed, std::size_t cases) {
  Rng rng(seed);
  SelfCheckSummary s;
  for (std::size_t k = 0; k < cases; ++k) {
    const RandomHistory rh = random_history(rng);
    const double projector = trace(gamma_of(rh.history, rh.space).gamma).real();
    const Complex fwd = amplitude_of(rh.history, rh.space).value;
    const Complex bwd = amplitude_of(reverse(rh.history), rh.space).value;
    const double amplitude = (fwd * bwd).real();
    const double diff = std::abs(projector - amplitude);
    const double conj_err = std::abs(bwd - std::conj(fwd));
    s.max_difference = std::max(s.max_difference, diff);
    ++s.cases;
    if (diff >= kCrossCheckTol || conj_err >= kCrossCheckTol) ++s.failures;
  }
  return s;
}

EvalReport selfcheck_report(std::uint64_t seed, std::size_t cases) {
  EvalReport r;
  r.title = "selfcheck";
  r.header.push_back({"seed", std::to_string(seed)});
  ReportEntry e;
  e.id = "1";
  e.kind = "representation equivalence";
  e.target = "tr(Gamma) = A(g)A(g^-1)";
  try {
    const SelfCheckSummary s = run_selfcheck(seed, cases);
    e.fields.push_back({"cases", static_cast<std::int64_t>(s.cases)});
    e.fields.push_back({"failures", static_cast<std::int64_t>(s.failures)});
    e.fields.push_back({"max |diff|", s.max_difference});
    e.fields.push_back({"tolerance", kCrossCheckTol});
    if (s.failures) {
      e.error = Errc::InternalConsistency;
      e.message = std::to_string(s.failures) + " of " + std::to_string(s.cases) + " histories disagree";
    }
  } catch (const Error& err) {
    e.error = err.code();
    e.message = err.what();
  }
  r.entries.push_back(std::move(e));
  return r;
}

}  // namespace qhist
