#include <set>

#include "doctest.h"
#include "ontofit/entailment.hpp"
#include "ontofit/semantics.hpp"
#include "ontofit/text.hpp"
#include "oracles.hpp"
#include "random_instances.hpp"

using namespace ontofit;

namespace {

const std::vector<std::string> kC = {"A", "B"};
const std::vector<std::string> kR = {"r"};

std::set<Element> all_of(const Interpretation& i) {
  std::set<Element> s;
  for (int d = 0; d < i.size(); ++d) s.insert(d);
  return s;
}

std::set<Element> complement(const Interpretation& i, const std::set<Element>& s) {
  std::set<Element> out;
  for (int d = 0; d < i.size(); ++d)
    if (!s.count(d)) out.insert(d);
  return out;
}

// The facts of i as an ABox over its element labels.
ABox facts(const Interpretation& i) {
  ABox a;
  for (const auto& [c, ext] : i.concepts)
    for (Element d : ext) a.add(ConceptAssertion{c, i.labels[d]});
  for (const auto& [r, ext] : i.roles)
    for (const auto& [d, e] : ext) a.add(RoleAssertion{r, i.labels[d], i.labels[e]});
  return a;
}

Ontology alci(const char* text) {
  Ontology o = parse_ontology(text);
  o.logic = Logic::ALCI;
  return o;
}

}  // namespace

TEST_CASE("extensions of each constructor") {
  Interpretation i;
  const Element d = i.add_element("d");
  const Element e = i.add_element("e");
  i.add_concept("A", d);
  i.add_concept("B", e);
  i.add_role("r", d, e);
  const Role r{"r", false};
  CHECK(extension(i, Concept::top()) == std::set<Element>{d, e});
  CHECK(extension(i, Concept::bottom()).empty());
  CHECK(extension(i, Concept::negate(Concept::name("A"))) == std::set<Element>{e});
  CHECK(extension(i, Concept::exists(r, Concept::name("B"))) == std::set<Element>{d});
  CHECK(extension(i, Concept::exists(r.inverse(), Concept::name("A"))) == std::set<Element>{e});
  CHECK(extension(i, Concept::forall(r, Concept::name("B"))) == std::set<Element>{d, e});
  CHECK(extension(i, Concept::forall(r, Concept::name("A"))) == std::set<Element>{e});
  CHECK(extension(i, Concept::at_least(2, r, Concept::top())).empty());
  CHECK(extension(i, Concept::at_most(1, r, Concept::top())) == std::set<Element>{d, e});
  CHECK(extension(i, Concept::at_most(0, r, Concept::top())) == std::set<Element>{e});
}

TEST_CASE("extensions obey boolean and quantifier dualities") {
  gen::Rng rng(21);
  for (int k = 0; k < 150; ++k) {
    const Interpretation i = gen::random_interpretation(rng, gen::pick(rng, 1, 4), kC, kR, 0.4);
    const Concept c = gen::random_concept(rng, 2, kC, kR, true);
    const Concept d = gen::random_concept(rng, 2, kC, kR, true);
    const Role r{"r", gen::coin(rng)};
    CHECK(extension(i, Concept::negate(c)) == complement(i, extension(i, c)));
    CHECK(extension(i, Concept::disj(c, d)) ==
          extension(i, Concept::negate(Concept::conj(Concept::negate(c), Concept::negate(d)))));
    CHECK(extension(i, Concept::forall(r, c)) == extension(i, Concept::negate(Concept::exists(r, Concept::negate(c)))));
    CHECK(extension(i, Concept::exists(r, c)) == extension(i, Concept::at_least(1, r, c)));
    const auto u = extension(i, Concept::disj(c, Concept::negate(c)));
    CHECK(u == all_of(i));
  }
}

TEST_CASE("models of ontologies and ABoxes") {
  const Ontology o = parse_ontology("A sub exists r . B");
  Interpretation i = from_abox(parse_abox("A(a); r(a,b)"));
  CHECK_FALSE(is_model(i, o));
  i.add_concept("B", *i.element_of("b"));
  CHECK(is_model(i, o));
  CHECK(is_model(i, parse_abox("A(a); B(b)")));
  CHECK_FALSE(is_model(i, parse_abox("B(a)")));
  CHECK_THROWS_AS(is_model(i, parse_abox("A(z)")), ContractError);
  CHECK_FALSE(is_model(i, parse_ontology("top sub bot")));
}

TEST_CASE("forest models") {
  const ABox a = parse_abox("A(a)");
  Interpretation i = from_abox(a);
  const Element c = i.add_element("c");
  i.add_role("r", c, *i.element_of("a"));
  CHECK(is_forest_model(i, a, Logic::ALCI));
  CHECK_FALSE(is_forest_model(i, a, Logic::ALC));

  Interpretation j = from_abox(a);
  const Element x = j.add_element("x");
  const Element y = j.add_element("y");
  j.add_role("r", *j.element_of("a"), x);
  j.add_role("r", x, y);
  CHECK(is_forest_model(j, a, Logic::ALC));
  j.add_role("r", *j.element_of("a"), y);
  CHECK_FALSE(is_forest_model(j, a, Logic::ALCI));

  const ABox cyc = parse_abox("r(a,b); r(b,a)");
  CHECK(is_forest_model(from_abox(cyc), cyc, Logic::ALC));
  Interpretation extra = from_abox(parse_abox("r(a,b)"));
  extra.add_role("r", *extra.element_of("b"), *extra.element_of("a"));
  CHECK_FALSE(is_forest_model(extra, parse_abox("r(a,b)"), Logic::ALC));
}

TEST_CASE("unraveling") {
  SUBCASE("self-loop") {
    const Interpretation loop = from_abox(parse_abox("A(b); r(b,b)"));
    const TreeInterpretation t = unravel(loop, 0, Logic::ALC, 3);
    CHECK(t.size() == 4);
    CHECK(t.height() == 3);
    CHECK(t.word(3) == "1.1.1");
    for (const auto& n : t.nodes) CHECK(n.concepts == std::set<std::string>{"A"});
    const TreeInterpretation ti = unravel(loop, 0, Logic::ALCI, 3);
    CHECK(ti.size() == 15);
  }
  SUBCASE("the unraveling maps back to the source") {
    gen::Rng rng(22);
    for (int k = 0; k < 60; ++k) {
      const Interpretation i = gen::random_interpretation(rng, gen::pick(rng, 1, 3), kC, kR, 0.4);
      const Element d = gen::pick(rng, 0, i.size() - 1);
      for (Logic l : {Logic::ALC, Logic::ALCI}) {
        const TreeInterpretation t = unravel(i, d, l, 2);
        CHECK(t.height() <= 2);
        const Interpretation ti = t.to_interpretation();
        CHECK(is_forest_shaped(ti, {0}, l));
        HomConstraints c;
        c.fixed[Term::individual(ti.labels[0])] = d;
        const ABox f = facts(ti);
        if (f.individuals().count(ti.labels[0])) CHECK(has_homomorphism(f, i, c));
        else CHECK(has_homomorphism(f, i));
      }
    }
  }
}

TEST_CASE("unravelings glued onto an ABox") {
  const ABox path = parse_abox("r(a1,a2)");
  const Interpretation loop = from_abox(parse_abox("r(b,b)"));
  const auto hs = homomorphisms(path, loop);
  REQUIRE(hs.size() == 1);
  const Interpretation iah = build_iah(loop, path, hs[0], Logic::ALC, 2);
  CHECK(iah.size() == 6);
  CHECK(is_model(iah, path));
  CHECK(is_forest_model(iah, path, Logic::ALC));
  REQUIRE(iah.depth.size() == 6u);
  for (int d = 0; d < iah.size(); ++d) CHECK(iah.depth[d] <= 2);
  CHECK(has_homomorphism(facts(iah), loop));

  Mapping bogus;
  bogus.assignment[Term::individual("a1")] = 0;
  CHECK_THROWS_AS(build_iah(loop, parse_abox("r(a1,a2); A(a1)"), bogus, Logic::ALC, 1), ContractError);
}

TEST_CASE("consistency checks") {
  const Ontology no_r = parse_ontology("exists r . top sub bot");
  CHECK_FALSE(check_consistency(parse_abox("r(a,b)"), no_r, Logic::ALC));
  CHECK(check_consistency(parse_abox("A(a)"), no_r, Logic::ALC));
  CHECK_FALSE(check_consistency(parse_abox("A(a)"), parse_ontology("top sub bot"), Logic::ALC));
  const Ontology back = alci("A sub forall r- . bot");
  CHECK_FALSE(check_consistency(parse_abox("A(b); r(a,b)"), back, Logic::ALCI));
  CHECK(check_consistency(parse_abox("A(a); r(a,b)"), back, Logic::ALCI));
  CHECK(check_consistency(parse_abox("A(a)"), parse_ontology("A sub exists r . A"), Logic::ALC));

  gen::Rng rng(23);
  for (int k = 0; k < 80; ++k) {
    const Logic l = gen::coin(rng) ? Logic::ALC : Logic::ALCI;
    const Ontology o = gen::random_ontology(rng, gen::pick(rng, 1, 2), 1, kC, kR, l);
    const ABox a = gen::random_abox(rng, {"a", "b"}, kC, kR, 0.3);
    const bool consistent = check_consistency(a, o, l);
    if (oracle::small_model(a, o, 3)) CHECK(consistent);
  }
}

TEST_CASE("ground entailment") {
  CHECK(entails_ground(parse_abox("A(a)"), parse_ontology("A sub B"), aq("B", "a")));
  CHECK_FALSE(entails_ground(parse_abox("A(a)"), parse_ontology("B sub A"), aq("B", "a")));
  CHECK(entails_ground(parse_abox("r(a,b); B(b)"), parse_ontology("exists r . B sub A"), aq("A", "a")));
  CHECK(entails_ground(parse_abox("A(a)"), parse_ontology("top sub bot"), aq("B", "a")));
  CHECK_THROWS_AS(entails_ground(parse_abox("A(a)"), Ontology{}, parse_ucq("exists x . A(x)").disjuncts[0]),
                  ContractError);

  gen::Rng rng(24);
  for (int k = 0; k < 80; ++k) {
    const Logic l = gen::coin(rng) ? Logic::ALC : Logic::ALCI;
    const Ontology o = gen::random_ontology(rng, gen::pick(rng, 1, 2), 1, kC, kR, l);
    const ABox a = gen::random_abox(rng, {"a", "b"}, kC, kR, 0.3);
    const CQ q = aq(kC[gen::pick(rng, 0, 1)], "a");
    if (!a.individuals().count("a")) continue;
    if (oracle::small_countermodel(a, o, single(q), 3)) CHECK_FALSE(entails_ground(a, o, q));
  }
}

TEST_CASE("bounded UCQ entailment") {
  using K = EntailmentAnswer::Kind;
  const auto back = alci("A1 sub exists r- . A2");
  CHECK(entails_ucq_bounded(parse_abox("A1(a)"), back, parse_ucq("exists x . r(x,a) & A2(x)"), Logic::ALCI).kind ==
        K::Entailed);
  const auto no = entails_ucq_bounded(parse_abox("A(a)"), Ontology{}, parse_ucq("exists x . B(x)"), Logic::ALC);
  REQUIRE(no.kind == K::NotEntailed);
  REQUIRE(no.countermodel.has_value());
  CHECK(is_model(*no.countermodel, parse_abox("A(a)")));
  CHECK_FALSE(evaluate_query(*no.countermodel, parse_ucq("exists x . B(x)")));

  gen::Rng rng(25);
  int decided = 0;
  for (int k = 0; k < 60; ++k) {
    const Logic l = gen::coin(rng) ? Logic::ALC : Logic::ALCI;
    const Ontology o = gen::random_ontology(rng, 1, 1, kC, kR, l);
    ABox a = gen::random_abox(rng, {"a", "b"}, kC, kR, 0.3);
    a.add(ConceptAssertion{"A", "a"});
    UCQ q = single(gen::random_cq(rng, gen::pick(rng, 1, 2), {}, kC, kR));
    if (gen::coin(rng)) q.disjuncts.push_back(gen::random_cq(rng, 1, {"a"}, kC, kR));
    const auto ans = entails_ucq_bounded(a, o, q, l);
    if (ans.kind == K::Entailed) {
      ++decided;
      CHECK_FALSE(oracle::small_countermodel(a, o, q, 3).has_value());
    } else if (ans.kind == K::NotEntailed) {
      ++decided;
      REQUIRE(ans.countermodel.has_value());
      CHECK(is_model(*ans.countermodel, a));
      CHECK(is_model(*ans.countermodel, o));
      CHECK_FALSE(evaluate_query(*ans.countermodel, q));
    }
  }
  CHECK(decided > 30);
}

TEST_CASE("query evaluation agrees with exhaustive assignment") {
  gen::Rng rng(26);
  for (int k = 0; k < 200; ++k) {
    Interpretation i = gen::random_interpretation(rng, gen::pick(rng, 1, 3), kC, kR, 0.4);
    i.names["a"] = 0;
    const CQ q = gen::random_cq(rng, gen::pick(rng, 0, 3), {"a"}, kC, kR);
    CHECK(evaluate_query(i, q) == oracle::eval_by_assignment(i, q));
    UCQ u = single(q);
    u.disjuncts.push_back(gen::random_cq(rng, 1, {}, kC, kR));
    CHECK(evaluate_query(i, u) ==
          (oracle::eval_by_assignment(i, u.disjuncts[0]) || oracle::eval_by_assignment(i, u.disjuncts[1])));
  }
  const Interpretation i = from_abox(parse_abox("A(a)"));
  CHECK_THROWS_AS(evaluate_query(i, aq("A", "z")), ContractError);
}
