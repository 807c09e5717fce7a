#include "ontofit/fit_flat.hpp"

#include <stdexcept>

#include "ontofit/entailment.hpp"
#include "ontofit/preprocess.hpp"

namespace ontofit {

namespace {

void require_mode(const ExampleCollection& e, Mode m, const char* op) {
  if (e.mode != m) throw ContractError(std::string(op) + " needs " + to_string(m) + " mode, got " + to_string(e.mode));
}

// __V_<ind> names, avoiding clashes with the signature.
std::map<std::string, std::string> v_names(const std::set<std::string>& inds, const Signature& sigma) {
  std::set<std::string> taken = sigma.concepts;
  std::map<std::string, std::string> out;
  for (const auto& i : inds) {
    std::string n = "__V_" + i;
    while (taken.count(n)) n += "_";
    taken.insert(n);
    out[i] = n;
  }
  return out;
}

Concept disjunction(const std::vector<Concept>& cs) {
  if (cs.empty()) return Concept::bottom();
  Concept out = cs[0];
  for (std::size_t k = 1; k < cs.size(); ++k) out = Concept::disj(out, cs[k]);
  return out;
}

// Shared core of the V_a constructions. With `positive_labels` the assertions
// of `a` are also forced (V_a sub A).
Ontology v_ontology(const ABox& a, const Signature& sigma, bool positive_labels) {
  const auto inds = a.individuals();
  if (inds.empty()) throw ContractError("the V_a construction needs an ABox with individuals");
  Signature sig = sigma;
  sig.merge(signature_of(a));
  const auto v = v_names(inds, sig);
  Ontology o;
  o.logic = Logic::ALC;
  std::vector<Concept> all;
  for (const auto& i : inds) all.push_back(Concept::name(v.at(i)));
  o.inclusions.push_back({Concept::top(), disjunction(all)});
  for (auto x = inds.begin(); x != inds.end(); ++x)
    for (auto y = std::next(x); y != inds.end(); ++y)
      o.inclusions.push_back({Concept::conj(Concept::name(v.at(*x)), Concept::name(v.at(*y))), Concept::bottom()});
  for (const auto& i : inds) {
    const Concept vi = Concept::name(v.at(i));
    for (const auto& c : sig.concepts) {
      if (a.has(ConceptAssertion{c, i})) {
        if (positive_labels) o.inclusions.push_back({vi, Concept::name(c)});
      } else {
        o.inclusions.push_back({vi, Concept::negate(Concept::name(c))});
      }
    }
    for (const auto& r : sig.roles)
      for (const auto& j : inds)
        if (!a.has(RoleAssertion{r, i, j}))
          o.inclusions.push_back({vi, Concept::forall(Role{r, false}, Concept::negate(Concept::name(v.at(j))))});
  }
  return o;
}

std::vector<ABox> aboxes(const std::vector<Example>& xs) {
  std::vector<ABox> out;
  for (const auto& x : xs) out.push_back(x.abox);
  return out;
}

// Individual name of each element of from_abox(a).
std::vector<std::string> element_names(const ABox& a) {
  auto inds = a.individuals();
  return {inds.begin(), inds.end()};
}

FitVerdict decide_consistency_like(const ExampleCollection& e, bool injective) {
  FitVerdict v;
  const Logic out_logic = injective ? Logic::ALCQ : Logic::ALC;
  if (e.positives.empty()) {
    v.outcome = Outcome::FittingExists;
    v.ontology = bottom_ontology(out_logic);
    v.diagnostics.push_back("no positive examples: the inconsistent ontology fits");
    return v;
  }
  const ABox plus = disjoint_abox_union(aboxes(e.positives)).abox;
  HomConstraints c;
  c.locally_injective = injective;
  for (std::size_t i = 0; i < e.negatives.size(); ++i) {
    auto hs = homomorphisms(e.negatives[i].abox, plus, c, Want::First);
    if (!hs.empty()) {
      v.outcome = Outcome::NoFitting;
      v.certificate.hom = hs.front();
      v.certificate.negative_index = static_cast<int>(i);
      v.certificate.target = plus;
      v.certificate.text = "negative " + std::to_string(i) + " maps " + (injective ? "locally injectively " : "") +
                           "into the union of positive ABoxes: " + to_string(hs.front(), from_abox(plus));
      return v;
    }
  }
  const Signature sigma = signature_of(e);
  Ontology o = synthesize_csp_ontology(plus, sigma);
  if (injective) {
    o.logic = Logic::ALCQ;
    const auto v_of = v_names(plus.individuals(), [&] {
      Signature s = sigma;
      s.merge(signature_of(plus));
      return s;
    }());
    for (const auto& r : sigma.roles)
      for (const auto& [ind, name] : v_of)
        o.inclusions.push_back({Concept::top(), Concept::at_most(1, Role{r, false}, Concept::name(name))});
  }
  if (!fits_flat(o, e)) throw std::logic_error("synthesized consistency ontology does not fit");
  v.outcome = Outcome::FittingExists;
  v.ontology = std::move(o);
  return v;
}

}  // namespace

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::FittingExists: return "fitting-exists";
    case Outcome::NoFitting: return "no-fitting";
    case Outcome::NoFittingWithinBounds: return "no-fitting-within-bounds";
    case Outcome::Unknown: return "unknown";
  }
  return "unknown";
}

Ontology bottom_ontology(Logic logic) {
  Ontology o;
  o.logic = logic;
  o.inclusions.push_back({Concept::top(), Concept::bottom()});
  return o;
}

Ontology synthesize_csp_ontology(const ABox& a, const Signature& sigma) { return v_ontology(a, sigma, false); }

FitVerdict decide_consistency_fitting(const ExampleCollection& e) {
  require_mode(e, Mode::Consistency, "decide_consistency_fitting");
  if (e.logic == Logic::ALCQ) throw ContractError("use decide_alcq_fitting for ALCQ");
  check_well_formed(e);
  return decide_consistency_like(e, false);
}

FitVerdict decide_alcq_fitting(const ExampleCollection& e) {
  require_mode(e, Mode::Consistency, "decide_alcq_fitting");
  if (e.logic != Logic::ALCQ) throw ContractError("decide_alcq_fitting needs logic ALCQ");
  check_well_formed(e);
  return decide_consistency_like(e, true);
}

ExampleClass classify_example(const Example& ex) {
  if (!ex.query || ex.query->disjuncts.size() != 1) throw ContractError("classify_example needs a single full CQ");
  const CQ& q = ex.query->disjuncts.front();
  if (!q.vars.empty()) throw ContractError("classify_example needs a query without variables");
  for (const auto& r : q.role_atoms)
    if (!ex.abox.has(RoleAssertion{r.role, r.from.name, r.to.name})) return ExampleClass::Inconsistent;
  return ExampleClass::Consistent;
}

ExampleCollection normalize_negatives(const ExampleCollection& e) {
  require_mode(e, Mode::FullCQ, "normalize_negatives");
  std::set<std::string> taken = signature_of(e).concepts;
  ExampleCollection out = e;
  for (auto& n : out.negatives) {
    if (classify_example(n) == ExampleClass::Consistent) continue;
    if (n.abox.individuals().empty()) throw ContractError("inconsistent negative example with an empty ABox");
    n.query = single(aq(fresh_name("__X", taken), least_individual(n.abox)));
  }
  return out;
}

ABox Completion::abox() const {
  ABox out = base;
  for (const auto& a : added) out.add(a);
  return out;
}

Completion saturate_refutation_candidate(const ExampleCollection& e) {
  if (e.mode != Mode::AQ && e.mode != Mode::FullCQ)
    throw ContractError("saturation needs aq or fullcq mode");
  auto u = disjoint_abox_union(aboxes(e.negatives));
  Completion c;
  c.base = u.abox;
  c.renaming = std::move(u.renaming);
  ABox cur = c.base;
  const auto names = element_names(cur);
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& p : e.positives) {
      if (e.mode == Mode::FullCQ && classify_example(p) == ExampleClass::Inconsistent) continue;
      const CQ& q = p.query->disjuncts.front();
      for (const auto& h : homomorphisms(p.abox, cur)) {
        for (const auto& atom : q.concept_atoms) {
          ConceptAssertion head{atom.concept_name, names[h.of_individual(atom.t.name)]};
          if (cur.has(head)) continue;
          cur.add(head);
          c.added.insert(head);
          changed = true;
        }
      }
    }
  }
  return c;
}

Ontology synthesize_fitting_ontology_flat(const Completion& c, const ExampleCollection& e) {
  Ontology o = v_ontology(c.abox(), signature_of(e), true);
  if (!fits_flat(o, e)) throw std::logic_error("synthesized ontology does not fit the examples");
  return o;
}

FitVerdict decide_aq_fitting(const ExampleCollection& e) {
  require_mode(e, Mode::AQ, "decide_aq_fitting");
  check_well_formed(e);
  FitVerdict v;
  if (e.negatives.empty()) {
    v.outcome = Outcome::FittingExists;
    v.ontology = bottom_ontology(e.logic);
    v.diagnostics.push_back("no negative examples: the inconsistent ontology fits");
    return v;
  }
  Completion c = saturate_refutation_candidate(e);
  const ABox cand = c.abox();
  v.certificate.saturated = cand;
  for (std::size_t i = 0; i < e.negatives.size(); ++i) {
    const CQ& q = e.negatives[i].query->disjuncts.front();
    const auto& atom = *q.concept_atoms.begin();
    const std::string ind = c.renaming[i].at(atom.t.name);
    if (cand.has(ConceptAssertion{atom.concept_name, ind})) {
      v.outcome = Outcome::NoFitting;
      v.certificate.negative_index = static_cast<int>(i);
      v.certificate.text = "saturated candidate contains " + atom.concept_name + "(" + ind + "), the query of negative " +
                           std::to_string(i);
      return v;
    }
  }
  v.outcome = Outcome::FittingExists;
  v.ontology = synthesize_fitting_ontology_flat(c, e);
  return v;
}

FitVerdict decide_fullcq_fitting(const ExampleCollection& e) {
  require_mode(e, Mode::FullCQ, "decide_fullcq_fitting");
  check_well_formed(e);
  FitVerdict v;
  if (e.negatives.empty()) {
    v.outcome = Outcome::FittingExists;
    v.ontology = bottom_ontology(e.logic);
    v.diagnostics.push_back("no negative examples: the inconsistent ontology fits");
    return v;
  }
  const ExampleCollection n = normalize_negatives(e);
  Completion c = saturate_refutation_candidate(n);
  const ABox cand = c.abox();
  v.certificate.saturated = cand;
  for (std::size_t i = 0; i < n.negatives.size(); ++i) {
    const CQ& q = n.negatives[i].query->disjuncts.front();
    bool all = true;
    for (const auto& atom : q.concept_atoms)
      if (!cand.has(ConceptAssertion{atom.concept_name, c.renaming[i].at(atom.t.name)})) all = false;
    if (all) {
      v.outcome = Outcome::NoFitting;
      v.certificate.negative_index = static_cast<int>(i);
      v.certificate.text = "saturated candidate contains every atom of the query of negative " + std::to_string(i);
      return v;
    }
  }
  for (std::size_t i = 0; i < n.positives.size(); ++i) {
    if (classify_example(n.positives[i]) == ExampleClass::Consistent) continue;
    auto hs = homomorphisms(n.positives[i].abox, cand, {}, Want::First);
    if (!hs.empty()) {
      v.outcome = Outcome::NoFitting;
      v.certificate.positive_index = static_cast<int>(i);
      v.certificate.hom = hs.front();
      v.certificate.target = cand;
      v.certificate.text = "inconsistent positive " + std::to_string(i) + " maps into the saturated candidate: " +
                           to_string(hs.front(), from_abox(cand));
      return v;
    }
  }
  Ontology o = synthesize_fitting_ontology_flat(c, n);
  if (!fits_flat(o, e)) throw std::logic_error("synthesized ontology does not fit the original examples");
  v.outcome = Outcome::FittingExists;
  v.ontology = std::move(o);
  return v;
}

bool fits_flat(const Ontology& o, const ExampleCollection& e) {
  switch (e.mode) {
    case Mode::Consistency:
      for (const auto& p : e.positives)
        if (!check_consistency(p.abox, o, e.logic)) return false;
      for (const auto& n : e.negatives)
        if (check_consistency(n.abox, o, e.logic)) return false;
      return true;
    case Mode::AQ:
    case Mode::FullCQ:
      for (const auto& p : e.positives)
        if (!entails_ground(p.abox, o, p.query->disjuncts.front())) return false;
      for (const auto& n : e.negatives)
        if (entails_ground(n.abox, o, n.query->disjuncts.front())) return false;
      return true;
    case Mode::UCQ: break;
  }
  throw ContractError("fits_flat does not handle ucq mode");
}

}  // namespace ontofit
