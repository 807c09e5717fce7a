#include <algorithm>
#include <cstdlib>

#include "doctest.h"
#include "ontofit/fit_ucq.hpp"
#include "ontofit/harness.hpp"
#include "ontofit/preprocess.hpp"
#include "ontofit/semantics.hpp"
#include "ontofit/text.hpp"
#include "ontofit/variations.hpp"
#include "ontofit/witness.hpp"
#include "random_instances.hpp"

using namespace ontofit;

namespace {

ExampleCollection fixture(const std::string& name) {
  return parse_collection(read_file(std::string(std::getenv("ONTOFIT_FIXTURES")) + "/" + name));
}

// One positive A(p) -> exists x . r(p,x) & A(x) and one negative A(a) -> B(a).
const char* kSuccessor =
    "mode: ucq\nlogic: alc\npositive {\n abox: A(p)\n query: exists x . r(p,x) & A(x)\n}\n"
    "negative {\n abox: A(a)\n query: B(a)\n}\n";

ChoiceFns first_components(const ExampleCollection& e) {
  ChoiceFns ch;
  for (const auto& p : e.positives) ch.pos_component.push_back(components(p.abox).front());
  for (const auto& n : e.negatives) {
    std::vector<CQ> per;
    for (const auto& d : n.query->disjuncts) per.push_back(components(d).front());
    ch.neg_component.push_back(per);
  }
  return ch;
}

TreeInterpretation chain(int length, const std::set<std::string>& labels) {
  TreeInterpretation t;
  t.nodes[0].concepts = labels;
  int v = 0;
  for (int k = 0; k < length; ++k) v = t.add_child(v, {Role{"r", false}}, labels);
  return t;
}

bool all_as_required(const RunReport& r) {
  for (const auto& c : r.checks)
    if (!c.as_required) return false;
  return r.verdict.outcome == Outcome::FittingExists;
}

}  // namespace

TEST_CASE("degree bound") {
  const auto e = fixture("inverse_only.ex");
  // Negatives contribute 4 each; each positive (7 + 1)^5.
  CHECK(degree_bound(e) == 8u + 2u * 32768u);

  ExampleCollection more = e;
  more.negatives.push_back(e.negatives[0]);
  CHECK(degree_bound(more) == degree_bound(e) + 4u);
  more.positives.push_back(e.positives[0]);
  CHECK(degree_bound(more) > degree_bound(e));

  std::string note;
  CHECK(degree_bound(e, &note, 1000) == 1000u);
  CHECK_FALSE(note.empty());
  note.clear();
  degree_bound(e, &note);
  CHECK(note.empty());
}

TEST_CASE("bounds derived from the examples") {
  const auto e = preprocess_collection(fixture("inverse_only.ex"));
  CHECK(required_depth_unit(e) == 1);
  const Bounds b = default_bounds(e);
  CHECK(b.depth_unit == 2);
  CHECK(b.degree == 2);
  CHECK_FALSE(is_full_bounds(e, b));
  Bounds full = b;
  full.depth_unit = static_cast<int>(e.size());
  full.degree = static_cast<int>(degree_bound(e));
  CHECK(is_full_bounds(e, full));
  const auto deep = parse_collection(
      "mode: ucq\npositive {\n abox: A(p)\n query: exists x,y,z . r(p,x) & r(x,y) & r(y,z)\n}\n");
  CHECK(required_depth_unit(deep) == 3);
}

TEST_CASE("proper variations") {
  const CQ p = parse_ucq("exists x,y . r(a,x) & r(x,y)").disjuncts[0];
  const ABox a = parse_abox("r(a,b)");
  const auto vs = enumerate_proper_variations(p, a, Logic::ALC);
  CHECK(vs.size() == 2);
  CHECK(std::find(vs.begin(), vs.end(), p) != vs.end());
  for (const auto& v : vs) CHECK(is_proper_variation(v, a, Logic::ALC));

  const CQ into = parse_ucq("exists x . r(x,a)").disjuncts[0];
  CHECK(enumerate_proper_variations(into, parse_abox("A(a)"), Logic::ALC).empty());
  CHECK(enumerate_proper_variations(into, parse_abox("A(a)"), Logic::ALCI).size() == 1);
  CHECK(enumerate_proper_variations(aq("A", "z"), parse_abox("A(a)"), Logic::ALC).empty());

  gen::Rng rng(41);
  for (int k = 0; k < 60; ++k) {
    const ABox b = gen::random_abox(rng, {"a", "b"}, {"A"}, {"r"}, 0.4);
    if (b.individuals().size() < 2) continue;
    const CQ q = gen::random_cq(rng, gen::pick(rng, 1, 2), {"a"}, {"A"}, {"r"});
    for (Logic l : {Logic::ALC, Logic::ALCI}) {
      const auto ws = enumerate_proper_variations(q, b, l);
      for (const auto& v : ws) CHECK(is_proper_variation(v, b, l));
      CHECK(std::set<CQ>(ws.begin(), ws.end()).size() == ws.size());
    }
  }
}

TEST_CASE("roll-up of proper variations") {
  const auto rv = roll_up(parse_ucq("exists x . r(a,x) & A(x) & B(a)").disjuncts[0], Logic::ALC);
  REQUIRE(rv.has_value());
  CHECK(rv->ground.size() == 1);
  CHECK(rv->attached.size() == 1);
  CHECK(rv->floating.empty());
  CHECK(rv->radius == 1);
  const auto fl = roll_up(parse_ucq("exists x . A(x)").disjuncts[0], Logic::ALC);
  REQUIRE(fl.has_value());
  CHECK(fl->floating.size() == 1);
  CHECK(fl->radius == -1);
  CHECK_FALSE(roll_up(parse_ucq("exists x . r(a,x) & s(a,x)").disjuncts[0], Logic::ALC).has_value());
}

TEST_CASE("local query condition on a tree piece") {
  const ABox comp = parse_abox("A(p)");
  const UCQ q = parse_ucq("exists x . r(p,x) & A(x)");
  const TreeInterpretation t = chain(1, {"A"});
  CHECK(check_condition_b_local(t, comp, q, {0, 0}, Logic::ALC));
  CHECK_FALSE(check_condition_b_local(t, comp, q, {0, 1}, Logic::ALC));
  CHECK(check_condition_b_local(chain(2, {"A"}), comp, q, {0, 1}, Logic::ALC));
  CHECK(check_condition_b_local(chain(1, {}), comp, q, {0, 1}, Logic::ALC));
}

TEST_CASE("gluing compares the host below a node with the trimmed mosaic") {
  Mosaic m;
  m.tree = chain(3, {"A"});
  CHECK(glues_to(m, 0, chain(2, {"A"}), 1));
  CHECK_FALSE(glues_to(m, 0, chain(2, {"B"}), 1));
  CHECK_FALSE(glues_to(m, 0, chain(1, {"A"}), 1));
  CHECK(glues_to(m, 1, chain(3, {"A"}), 1));
  CHECK_THROWS_AS(glues_to(m, 9, chain(2, {"A"}), 1), ContractError);
}

TEST_CASE("mosaic elimination") {
  Mosaic loop;
  loop.tree = chain(3, {});
  Mosaic stuck;
  stuck.tree.add_child(stuck.tree.add_child(0, {Role{"r", false}}, {"B"}), {Role{"r", false}}, {});
  Mosaic leaf;
  const auto kept = eliminate_mosaics({loop, stuck, leaf}, 1);
  REQUIRE(kept.size() == 2);
  CHECK(kept[0].tree.size() + kept[1].tree.size() == 5);
  CHECK(eliminate_mosaics({stuck}, 1).empty());
  CHECK(eliminate_mosaics({loop, stuck, leaf}, 1, EliminationOrder::InPlaceReverse).size() == 2);

  const auto e = preprocess_collection(parse_collection(kSuccessor));
  Bounds b;
  b.depth_unit = 1;
  b.degree = 2;
  const auto seed = enumerate_mosaics(e, first_components(e), AvoidSet{}, 0, b);
  REQUIRE_FALSE(seed.empty());
  for (const auto& m : seed) {
    CHECK(m.tree.height() <= 3);
    CHECK(m.owner == 0);
    for (const auto& n : m.tree.nodes) CHECK(static_cast<int>(n.children.size()) <= b.degree);
  }
  gen::Rng rng(42);
  for (int k = 0; k < 10; ++k) {
    std::vector<Mosaic> s0;
    for (const auto& m : seed)
      if (gen::coin(rng, 0.8)) s0.push_back(m);
    const auto g = eliminate_mosaics(s0, 1, EliminationOrder::Generational);
    const auto r = eliminate_mosaics(s0, 1, EliminationOrder::InPlaceReverse);
    CHECK(g.size() == r.size());
    CHECK(g.size() <= s0.size());
    CHECK(eliminate_mosaics(g, 1).size() == g.size());
  }
  b.max_mosaics = 3;
  CHECK_THROWS_AS(enumerate_mosaics(e, first_components(e), AvoidSet{}, 0, b), ContractError);
}

TEST_CASE("base candidates are forest models of the negatives") {
  const auto e = preprocess_collection(fixture("inverse_only.ex"));
  Bounds b;
  b.depth_unit = 1;
  b.degree = 2;
  int seen = 0;
  enumerate_base_candidates(e, first_components(e), AvoidSet{}, b, [&](const BaseCandidate& c) {
    ++seen;
    for (const auto& n : e.negatives) CHECK(is_model(c.interp, n.abox));
    CHECK(c.owner.size() == static_cast<std::size_t>(c.interp.size()));
    CHECK(c.parent.size() == static_cast<std::size_t>(c.interp.size()));
    for (const auto& [name, d] : c.interp.names) CHECK(c.parent[d] == -1);
    return seen < 25;
  });
  CHECK(seen > 0);
  CHECK(seen <= 25);
}

TEST_CASE("UCQ fitting decisions") {
  const auto e = preprocess_collection(fixture("inverse_only.ex"));
  const auto v = decide_ucq_fitting(e, default_bounds(e));
  REQUIRE(v.outcome == Outcome::FittingExists);
  REQUIRE(v.ontology.has_value());
  CHECK(all_as_required(verify_fit(*v.ontology, e)));

  ExampleCollection only_pos = e;
  only_pos.negatives.clear();
  const auto w = decide_ucq_fitting(only_pos, default_bounds(only_pos));
  REQUIRE(w.outcome == Outcome::FittingExists);
  REQUIRE(w.ontology.has_value());
  CHECK(*w.ontology == bottom_ontology(e.logic));

  const auto clash = preprocess_collection(parse_collection(
      "mode: ucq\npositive {\n abox: A(p)\n query: B(p)\n}\nnegative {\n abox: A(a)\n query: B(a)\n}\n"));
  CHECK(decide_ucq_fitting(clash, default_bounds(clash)).outcome != Outcome::FittingExists);
}

TEST_CASE("a regular witness assembles into a model refuting the negatives") {
  const auto e = preprocess_collection(fixture("inverse_only.ex"));
  Bounds b;
  b.depth_unit = 2;
  b.degree = 2;
  b.finite_witness_size = 0;
  const auto v = decide_ucq_fitting(e, b);
  REQUIRE(v.outcome == Outcome::FittingExists);
  REQUIRE(v.witness != nullptr);
  const Interpretation i = assemble(*v.witness, 3 * b.depth_unit);
  for (const auto& n : e.negatives) {
    CHECK(is_model(i, n.abox));
    CHECK_FALSE(evaluate_query(i, *n.query));
  }
  CHECK(is_forest_shaped(i, [&] {
    std::set<Element> s;
    for (const auto& [name, d] : i.names) s.insert(d);
    return s;
  }(), Logic::ALCI));
  CHECK_FALSE(v.witness->dump().empty());
}

TEST_CASE("finite witnesses") {
  const auto e = preprocess_collection(fixture("inverse_only.ex"));
  REQUIRE(e.negatives.size() == 2);
  const std::string a0 = *e.negatives[0].abox.individuals().begin();
  const std::string a1 = *e.negatives[1].abox.individuals().begin();
  FiniteWitness w;
  const Element x0 = w.j.add_individual(a0);
  const Element y0 = w.j.add_element("y0");
  const Element x1 = w.j.add_individual(a1);
  const Element y1 = w.j.add_element("y1");
  w.part = {0, 0, 1, 1};
  w.j.add_concept("A1", x0);
  w.j.add_concept("A2", y0);
  w.j.add_concept("A2", x1);
  w.j.add_concept("A1", y1);
  for (auto [p, c] : {std::pair{x0, y0}, std::pair{x1, y1}}) {
    w.j.add_role("r", p, c);
    w.j.add_role("r", c, p);
  }
  CHECK(check_finite_witness(w, e, Logic::ALCI));
  CHECK_FALSE(check_finite_witness(w, e, Logic::ALC));
  FiniteWitness with_b = w;
  with_b.j.add_concept("B", x0);
  CHECK_FALSE(check_finite_witness(with_b, e, Logic::ALCI));
  FiniteWitness bad = w;
  bad.part = {0, 1};
  CHECK_THROWS_AS(check_finite_witness(bad, e, Logic::ALCI), ContractError);

  const Ontology o = synthesize_vd_ontology(w, e, Logic::ALCI);
  CHECK(o.logic == Logic::ALCI);
  CHECK(all_as_required(verify_fit(o, e)));
  CHECK_THROWS_AS(synthesize_vd_ontology(with_b, e, Logic::ALCI), ContractError);
}

TEST_CASE("finite witness search") {
  const auto e = preprocess_collection(parse_collection(kSuccessor));
  Bounds b;
  b.finite_witness_size = 1;
  const auto w = search_finite_witness(e, Logic::ALC, b);
  REQUIRE(w.has_value());
  CHECK(w->j.size() == 1);
  CHECK(check_finite_witness(*w, e, Logic::ALC));
  const Ontology o = synthesize_vd_ontology(*w, e, Logic::ALC);
  CHECK(all_as_required(verify_fit(o, e)));

  const auto inv = preprocess_collection(fixture("inverse_only.ex"));
  b.finite_witness_size = 2;
  CHECK_FALSE(search_finite_witness(inv, Logic::ALC, b).has_value());
  const auto found = search_finite_witness(inv, Logic::ALCI, b);
  REQUIRE(found.has_value());
  CHECK(check_finite_witness(*found, inv, Logic::ALCI));
  CHECK(decide_ucq_fitting(inv, default_bounds(inv)).outcome == Outcome::FittingExists);
}
