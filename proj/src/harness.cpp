#include "ontofit/harness.hpp"

#include <chrono>
#include <sstream>

#include "ontofit/preprocess.hpp"
#include "ontofit/text.hpp"

namespace ontofit {

namespace {

using Kind = EntailmentAnswer::Kind;

Kind to_kind(bool b) { return b ? Kind::Entailed : Kind::NotEntailed; }

double since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

RunReport verify_fit(const Ontology& o, const ExampleCollection& e, const EntailBounds& bounds) {
  const auto t0 = std::chrono::steady_clock::now();
  check_well_formed(o);
  RunReport r;
  auto check = [&](const Example& x, bool positive, int index) {
    ExampleCheck c;
    c.positive = positive;
    c.index = index;
    switch (e.mode) {
      case Mode::Consistency:
        c.answer = to_kind(!check_consistency(x.abox, o, e.logic));
        break;
      case Mode::AQ:
      case Mode::FullCQ:
        c.answer = to_kind(entails_ground(x.abox, o, x.query->disjuncts.front()));
        break;
      case Mode::UCQ: {
        auto a = entails_ucq_bounded(x.abox, o, *x.query, e.logic, bounds);
        c.answer = a.kind;
        if (a.kind == Kind::Unknown)
          r.diagnostics.push_back((positive ? "positive " : "negative ") + std::to_string(index) + ": " +
                                  a.diagnostics);
        break;
      }
    }
    // Positives need entailment (consistency for consistency mode).
    const bool want_entailed = (e.mode == Mode::Consistency) != positive;
    c.as_required = c.answer != Kind::Unknown && (c.answer == Kind::Entailed) == want_entailed;
    r.checks.push_back(c);
  };
  for (std::size_t i = 0; i < e.positives.size(); ++i) check(e.positives[i], true, static_cast<int>(i));
  for (std::size_t i = 0; i < e.negatives.size(); ++i) check(e.negatives[i], false, static_cast<int>(i));
  bool unknown = false;
  bool failed = false;
  for (const auto& c : r.checks) {
    if (c.answer == Kind::Unknown)
      unknown = true;
    else if (!c.as_required)
      failed = true;
  }
  r.verdict.outcome = failed ? Outcome::NoFitting : unknown ? Outcome::Unknown : Outcome::FittingExists;
  r.verdict.ontology = o;
  r.seconds = since(t0);
  return r;
}

RunReport run_fit(const ExampleCollection& e, const std::optional<Bounds>& bounds) {
  const auto t0 = std::chrono::steady_clock::now();
  RunReport r;
  switch (e.mode) {
    case Mode::Consistency:
      r.verdict = e.logic == Logic::ALCQ ? decide_alcq_fitting(e) : decide_consistency_fitting(e);
      break;
    case Mode::AQ:
      r.verdict = decide_aq_fitting(e);
      break;
    case Mode::FullCQ:
      r.verdict = decide_fullcq_fitting(e);
      break;
    case Mode::UCQ: {
      const ExampleCollection p = preprocess_collection(e);
      r.bounds = bounds ? *bounds : default_bounds(p);
      r.verdict = decide_ucq_fitting(p, *r.bounds);
      break;
    }
  }
  if (r.verdict.ontology) {
    RunReport v = verify_fit(*r.verdict.ontology, e);
    r.checks = std::move(v.checks);
    for (auto& d : v.diagnostics) r.diagnostics.push_back(std::move(d));
    if (v.verdict.outcome == Outcome::NoFitting)
      throw std::logic_error("emitted ontology failed verification");
    if (v.verdict.outcome == Outcome::Unknown) r.diagnostics.push_back("verification of the ontology was inconclusive");
  }
  r.seconds = since(t0);
  return r;
}

std::string RunReport::to_text() const {
  std::ostringstream out;
  out << "outcome: " << to_string(verdict.outcome) << "\n";
  if (bounds)
    out << "bounds: depth-unit " << bounds->depth_unit << ", degree " << bounds->degree << ", finite-size "
        << bounds->finite_witness_size << "\n";
  if (!verdict.certificate.text.empty()) out << "certificate: " << verdict.certificate.text << "\n";
  if (verdict.certificate.saturated) out << "candidate: " << serialize(*verdict.certificate.saturated) << "\n";
  for (const auto& d : verdict.diagnostics) out << "note: " << d << "\n";
  for (const auto& d : diagnostics) out << "note: " << d << "\n";
  for (const auto& c : checks)
    out << (c.positive ? "positive " : "negative ") << c.index << ": " << to_string(c.answer)
        << (c.as_required ? " ok" : " FAIL") << "\n";
  if (verdict.witness) out << "regular witness:\n" << verdict.witness->dump();
  if (verdict.finite_witness) out << "finite witness:\n" << to_string(*verdict.finite_witness);
  if (verdict.ontology) out << "ontology:\n" << serialize(*verdict.ontology);
  return out.str();
}

}  // namespace ontofit
