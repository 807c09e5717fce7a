#include "ontofit/generate.hpp"

#include "ontofit/preprocess.hpp"

namespace ontofit {

namespace {

Term ind(const std::string& n) { return Term::individual(n); }

// exists x . F(x)
UCQ fail_query() {
  CQ q;
  q.vars.insert("x");
  q.concept_atoms.insert({kFail, Term::variable("x")});
  return single(q);
}

Example example(ABox a, UCQ q) {
  Example e;
  e.abox = std::move(a);
  e.query = std::move(q);
  return e;
}

// r(from, to) with the direction of an inverse role resolved.
RoleAssertion role_assertion(const Role& r, const std::string& from, const std::string& to) {
  return r.inverted ? RoleAssertion{r.name, to, from} : RoleAssertion{r.name, from, to};
}

}  // namespace

std::string bar_name(const std::string& concept_name) { return "__Bar_" + concept_name; }

ExampleCollection generate_from_entailment(const ABox& a, const Ontology& o, const CQ& q) {
  if (a.individuals().empty()) throw ContractError("the reduction needs a non-empty ABox");
  const Ontology n = normalize_ontology(o);
  Signature all = signature_of(n);
  all.merge(signature_of(a));
  all.merge(signature_of(q));
  for (const char* r : {kReal, kChoice, kChoiceBar, kFail})
    if (all.concepts.count(r)) throw ContractError(std::string("reserved name ") + r + " already in use");
  if (all.roles.count(kSucc)) throw ContractError(std::string("reserved role ") + kSucc + " already in use");

  std::set<std::string> names = signature_of(n).concepts;
  for (const auto& c : signature_of(q).concepts) names.insert(c);

  ExampleCollection e;
  e.mode = Mode::UCQ;
  e.logic = Logic::ALCI;

  ABox neg = a;
  for (const auto& i : a.individuals()) neg.add(ConceptAssertion{kReal, i});
  e.negatives.push_back(example(neg, fail_query()));

  for (const auto& c : names) {
    ABox clash;
    clash.add(ConceptAssertion{c, "a"});
    clash.add(ConceptAssertion{bar_name(c), "a"});
    e.positives.push_back(example(clash, fail_query()));
  }

  for (const char* choice : {kChoice, kChoiceBar}) {
    ABox real;
    real.add(ConceptAssertion{kReal, "a"});
    CQ succ;
    succ.vars.insert("x");
    succ.role_atoms.insert({kSucc, ind("a"), Term::variable("x")});
    succ.concept_atoms.insert({choice, Term::variable("x")});
    e.positives.push_back(example(real, single(succ)));
  }

  for (const auto& c : names) {
    // a and b share the two successors c (Choice) and d (ChoiceBar); the
    // query needs a common successor labelled with the concept.
    ABox star;
    star.add(ConceptAssertion{kReal, "a"});
    for (const char* from : {"a", "b"})
      for (const char* to : {"c", "d"}) star.add(RoleAssertion{kSucc, from, to});
    star.add(ConceptAssertion{kChoice, "c"});
    star.add(ConceptAssertion{kChoiceBar, "d"});
    CQ qs;
    qs.vars.insert("x");
    qs.role_atoms.insert({kSucc, ind("a"), Term::variable("x")});
    qs.role_atoms.insert({kSucc, ind("b"), Term::variable("x")});
    qs.concept_atoms.insert({c, Term::variable("x")});
    e.positives.push_back(example(star, single(qs)));

    for (bool positive : {true, false}) {
      ABox t;
      t.add(ConceptAssertion{kReal, "a"});
      t.add(RoleAssertion{kSucc, "a", "b"});
      t.add(ConceptAssertion{positive ? kChoice : kChoiceBar, "b"});
      t.add(ConceptAssertion{c, "b"});
      e.positives.push_back(example(t, single(aq(positive ? c : bar_name(c), "a"))));
    }
  }

  using K = Concept::Kind;
  for (const auto& ci : n.inclusions) {
    const Concept& l = ci.lhs;
    const Concept& r = ci.rhs;
    // Encodings apply to Real elements only.
    ABox x;
    x.add(ConceptAssertion{kReal, "a"});
    if (l.kind() == K::Top) {
      e.positives.push_back(example(x, single(aq(r.concept_name(), "a"))));
    } else if (l.kind() == K::And) {
      x.add(ConceptAssertion{l.left().concept_name(), "a"});
      x.add(ConceptAssertion{l.right().concept_name(), "a"});
      e.positives.push_back(example(x, single(aq(r.concept_name(), "a"))));
    } else if (l.kind() == K::Name && r.kind() == K::Exists) {
      x.add(ConceptAssertion{l.concept_name(), "a"});
      CQ qe;
      qe.vars.insert("y");
      const Role& role = r.role();
      if (role.inverted)
        qe.role_atoms.insert({role.name, Term::variable("y"), ind("a")});
      else
        qe.role_atoms.insert({role.name, ind("a"), Term::variable("y")});
      qe.concept_atoms.insert({kReal, Term::variable("y")});
      qe.concept_atoms.insert({r.operand().concept_name(), Term::variable("y")});
      e.positives.push_back(example(x, single(qe)));
    } else if (l.kind() == K::Exists) {
      x.add(role_assertion(l.role(), "a", "b"));
      x.add(ConceptAssertion{kReal, "b"});
      x.add(ConceptAssertion{l.operand().concept_name(), "b"});
      e.positives.push_back(example(x, single(aq(r.concept_name(), "a"))));
    } else if (l.kind() == K::Name && r.kind() == K::Not) {
      x.add(ConceptAssertion{l.concept_name(), "a"});
      e.positives.push_back(example(x, single(aq(bar_name(r.operand().concept_name()), "a"))));
    } else if (l.kind() == K::Not) {
      x.add(ConceptAssertion{bar_name(l.operand().concept_name()), "a"});
      e.positives.push_back(example(x, single(aq(r.concept_name(), "a"))));
    } else {
      throw ContractError("inclusion not in normal form: " + l.to_string() + " sub " + r.to_string());
    }
  }

  // q as an ABox over Real elements only.
  ABox aq_abox = as_abox(q);
  for (const auto& i : aq_abox.individuals()) aq_abox.add(ConceptAssertion{kReal, i});
  e.positives.push_back(example(aq_abox, fail_query()));
  check_well_formed(e);
  return e;
}

}  // namespace ontofit
