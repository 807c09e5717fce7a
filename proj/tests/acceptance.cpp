#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "ontofit/entailment.hpp"
#include "ontofit/fit_flat.hpp"
#include "ontofit/fit_ucq.hpp"
#include "ontofit/generate.hpp"
#include "ontofit/harness.hpp"
#include "ontofit/preprocess.hpp"
#include "ontofit/text.hpp"
#include "ontofit/witness.hpp"
#include "random_instances.hpp"

using namespace ontofit;

namespace {

std::string fixtures;

ExampleCollection load(const std::string& name) { return parse_collection(read_file(fixtures + "/" + name)); }
Ontology load_ontology(const std::string& name) { return parse_ontology(read_file(fixtures + "/" + name)); }

// Collects failed checks of one criterion.
struct Check {
  std::vector<std::string> failures;
  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

int failed = 0;

void criterion(int n, const std::string& title, double limit_seconds, const std::function<void(Check&)>& body) {
  Check c;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.failures.push_back(std::string("exception: ") + e.what());
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (s > limit_seconds) {
    std::ostringstream msg;
    msg << "took " << s << " s, limit " << limit_seconds << " s";
    c.failures.push_back(msg.str());
  }
  const bool pass = c.failures.empty();
  if (!pass) ++failed;
  std::cout << (pass ? "PASS" : "FAIL") << " criterion " << n << ": " << title << " (" << s << " s)\n";
  for (const auto& f : c.failures) std::cout << "    " << f << "\n";
  std::cout.flush();
}

bool all_as_required(const RunReport& r, std::size_t expected) {
  if (r.checks.size() != expected) return false;
  for (const auto& c : r.checks) {
    const auto want = c.positive ? EntailmentAnswer::Kind::Entailed : EntailmentAnswer::Kind::NotEntailed;
    if (!c.as_required || c.answer != want) return false;
  }
  return r.verdict.outcome == Outcome::FittingExists;
}

std::string tree_key(const TreeInterpretation& t, int v) {
  const auto& n = t.nodes[v];
  std::string out = "(";
  for (const auto& e : n.edges) out += e.to_string() + ",";
  out += "|";
  for (const auto& c : n.concepts) out += c + ",";
  std::vector<std::string> kids;
  for (int c : n.children) kids.push_back(tree_key(t, c));
  std::sort(kids.begin(), kids.end());
  for (const auto& k : kids) out += k;
  return out + ")";
}

std::multiset<std::string> keys(const std::vector<Mosaic>& s) {
  std::multiset<std::string> out;
  for (const auto& m : s) out.insert(tree_key(m.tree, 0));
  return out;
}

struct Triple {
  const char* abox;
  const char* ontology;
  const char* query;
};

const std::vector<Triple> kTriples = {
    {"A(a)", "", "exists x . B(x)"},
    {"A(a)", "A sub exists r . B", "exists x . B(x)"},
    {"A(a)", "A sub exists r . B", "exists x,y . r(x,y) & B(y)"},
    {"A(a)", "A sub exists r . B", "exists x . r(x,x)"},
    {"A(a)", "A sub B", "exists x . B(x)"},
    {"A(a)", "B sub A", "exists x . B(x)"},
    {"r(a,b); B(b)", "exists r . B sub A", "exists x . A(x)"},
    {"r(a,b)", "exists r . B sub A", "exists x . A(x)"},
    {"A(a)", "A sub exists r- . B", "exists x,y . r(x,y) & B(x)"},
    {"A(a)", "A sub exists r- . B", "exists x . r(x,x)"},
    {"A(a)", "A sub not B", "exists x . B(x)"},
    {"A(a)", "not B sub C", "exists x . C(x)"},
    {"A(a)", "top sub B", "exists x . B(x)"},
    {"A(a); B(a)", "(A and B) sub C", "exists x . C(x)"},
    {"A(a)", "A sub exists r . A", "exists x . r(x,x)"},
    {"r(a,a)", "top sub A", "exists x . r(x,x) & A(x)"},
    {"A(a)", "A sub exists r . B\nB sub exists r- . C", "exists x . C(x)"},
    {"A(a)", "A sub (B or C)", "exists x . B(x)"},
    {"A(a)", "A sub (B or C)\nC sub B", "exists x . B(x)"},
    {"A(a)", "A sub exists r . A", "exists x,y . r(x,y) & r(y,x)"},
};

// Tiny ucq collections whose mosaics seed the elimination runs.
const std::vector<const char*> kMosaicSeeds = {
    "mode: ucq\nlogic: alc\nnegative {\n abox: r(a,b)\n query: A(a)\n}\n",
    "mode: ucq\nlogic: alc\npositive {\n abox: A(p)\n query: exists x . r(p,x) & A(x)\n}\n"
    "negative {\n abox: r(a,b)\n query: A(a)\n}\n",
    "mode: ucq\nlogic: alc\npositive {\n abox: A(p)\n query: exists x . r(x,p)\n}\n"
    "negative {\n abox: r(a,b)\n query: A(a)\n}\n",
    "mode: ucq\nlogic: alci\npositive {\n abox: r(p,q)\n query: A(q)\n}\n"
    "negative {\n abox: r(a,b)\n query: A(a)\n}\n",
};

}  // namespace

int main(int argc, char** argv) {
  fixtures = argc > 1 ? argv[1] : "fixtures";

  criterion(1, "consistency example and its swap", 1.0, [](Check& c) {
    const auto v = decide_consistency_fitting(load("loop_path.ex"));
    c.expect(v.outcome == Outcome::FittingExists, "loop_path.ex: expected fitting-exists");
    c.expect(v.ontology.has_value(), "loop_path.ex: no ontology");
    if (v.ontology) {
      c.expect(!check_consistency(parse_abox("r(b,b)"), *v.ontology, Logic::ALC), "r(b,b) should be inconsistent");
      c.expect(check_consistency(parse_abox("r(a1,a2)"), *v.ontology, Logic::ALC), "r(a1,a2) should be consistent");
    }
    const auto sw = load("loop_path_swapped.ex");
    const auto w = decide_consistency_fitting(sw);
    c.expect(w.outcome == Outcome::NoFitting, "swapped: expected no-fitting");
    c.expect(w.certificate.hom && w.certificate.target && w.certificate.negative_index, "swapped: no certificate");
    if (w.certificate.hom && w.certificate.target && w.certificate.negative_index) {
      const Interpretation t = from_abox(*w.certificate.target);
      const ABox& src = sw.negatives[*w.certificate.negative_index].abox;
      c.expect(is_homomorphism(*w.certificate.hom, src, t), "swapped: certificate is not a homomorphism");
      const Element b = *t.element_of("b");
      c.expect(w.certificate.hom->of_individual("a1") == b && w.certificate.hom->of_individual("a2") == b,
               "swapped: expected a1,a2 -> b");
    }
  });

  criterion(2, "atomic-query example and its drop-one variants", 1.0, [](Check& c) {
    const auto v = decide_aq_fitting(load("ex_aq.ex"));
    c.expect(v.outcome == Outcome::NoFitting, "full collection: expected no-fitting");
    c.expect(v.certificate.saturated == parse_abox("A3(c); A4(d); A2(c); A1(c)"),
             "saturated candidate differs from {A3(c), A4(d), A2(c), A1(c)}");
    for (const char* f : {"ex_aq_drop_p1.ex", "ex_aq_drop_p2.ex", "ex_aq_drop_n1.ex", "ex_aq_drop_n2.ex"}) {
      const auto e = load(f);
      const auto d = decide_aq_fitting(e);
      c.expect(d.outcome == Outcome::FittingExists && d.ontology, std::string(f) + ": expected fitting-exists");
      if (d.ontology)
        c.expect(all_as_required(verify_fit(*d.ontology, e), e.positives.size() + e.negatives.size()),
                 std::string(f) + ": synthesized ontology fails verification");
    }
  });

  criterion(3, "publication example verification", 1.0, [](Check& c) {
    const auto e = load("intro.ex");
    const auto en = load("intro_neg.ex");
    const auto o = load_ontology("intro.dl");
    const auto bot = load_ontology("intro_bot.dl");
    const auto prime = load_ontology("intro_prime.dl");
    auto fits = [](const Ontology& x, const ExampleCollection& y) {
      return verify_fit(x, y).verdict.outcome == Outcome::FittingExists;
    };
    auto fails = [](const Ontology& x, const ExampleCollection& y) {
      return verify_fit(x, y).verdict.outcome == Outcome::NoFitting;
    };
    c.expect(fits(o, e), "the displayed ontology should fit");
    c.expect(fits(bot, e), "the bottom ontology should fit");
    c.expect(fits(prime, e), "the extended ontology should fit");
    c.expect(fits(o, en), "with the negative: the displayed ontology should still fit");
    c.expect(fails(bot, en), "with the negative: the bottom ontology should not fit");
    c.expect(fails(prime, en), "with the negative: the extended ontology should not fit");
  });

  criterion(4, "inverse roles matter for query fitting", 30.0, [](Check& c) {
    const auto e = preprocess_collection(load("inverse_only.ex"));
    Bounds b;
    b.depth_unit = 2;
    b.degree = 2;
    b.finite_witness_size = 0;  // mosaic search alone
    ExampleCollection alc = e;
    alc.logic = Logic::ALC;
    c.expect(decide_ucq_fitting(e, b).outcome == Outcome::FittingExists, "ALCI: expected fitting-exists");
    c.expect(decide_ucq_fitting(alc, b).outcome == Outcome::NoFittingWithinBounds,
             "ALC: expected no-fitting-within-bounds");
    b.finite_witness_size = 2;
    const auto w = search_finite_witness(e, Logic::ALCI, b);
    c.expect(w.has_value(), "no finite witness with parts of size 2");
    if (!w) return;
    c.expect(w->j.size() == 4, "expected two 2-cycles");
    const Ontology o = synthesize_vd_ontology(*w, e, Logic::ALCI);
    c.expect(all_as_required(verify_fit(o, e), 4), "the V_d ontology fails verification");
    c.expect(!check_finite_witness(*w, e, Logic::ALC), "the witness should fail under ALC");
  });

  std::vector<ExampleCollection> aq_suite;
  {
    gen::Rng rng(5);
    for (int i = 0; i < 200; ++i) aq_suite.push_back(gen::random_aq(rng));
  }

  criterion(5, "AQ decider against completion enumeration (200)", 60.0, [&](Check& c) {
    int agree = 0;
    for (const auto& e : aq_suite) {
      const auto v = decide_aq_fitting(e);
      const bool oracle = oracle::aq_fits(e);
      if ((v.outcome == Outcome::FittingExists) == oracle) ++agree;
      if (v.ontology && !fits_flat(*v.ontology, e)) c.expect(false, "synthesized ontology does not fit");
    }
    c.expect(agree == 200, std::to_string(agree) + "/200 agree");
  });

  criterion(6, "FullCQ decider against completion enumeration (200)", 60.0, [&](Check& c) {
    gen::Rng rng(6);
    int agree = 0;
    for (int i = 0; i < 200; ++i) {
      const auto e = gen::random_fullcq(rng);
      const auto v = decide_fullcq_fitting(e);
      if ((v.outcome == Outcome::FittingExists) == oracle::fullcq_fits(e)) ++agree;
      if (v.ontology && !fits_flat(*v.ontology, e)) c.expect(false, "synthesized ontology does not fit");
    }
    c.expect(agree == 200, std::to_string(agree) + "/200 agree");
  });

  criterion(7, "consistency fitting decomposes over negatives (100)", 60.0, [&](Check& c) {
    gen::Rng rng(7);
    int agree = 0;
    for (int i = 0; i < 100; ++i) {
      const auto e = gen::random_consistency(rng);
      const bool whole = decide_consistency_fitting(e).outcome == Outcome::FittingExists;
      bool each = true;
      for (const auto& n : e.negatives) {
        ExampleCollection one = e;
        one.negatives = {n};
        each = each && decide_consistency_fitting(one).outcome == Outcome::FittingExists;
      }
      if (whole == each && whole == oracle::consistency_fits(e)) ++agree;
    }
    c.expect(agree == 100, std::to_string(agree) + "/100 agree");
  });

  criterion(8, "consistent fitting reduces to plain fitting (100)", 60.0, [&](Check& c) {
    gen::Rng rng(8);
    int agree = 0;
    for (int i = 0; i < 100; ++i) {
      const auto e = gen::random_aq(rng);
      const auto r = reduce_consistent_fitting(e);
      const bool direct = oracle::consistent_aq_fits(e);
      if (direct == oracle::aq_fits(r) && direct == (decide_aq_fitting(r).outcome == Outcome::FittingExists)) ++agree;
    }
    c.expect(agree == 100, std::to_string(agree) + "/100 agree");
  });

  criterion(9, "number restrictions separate two successors from one", 1.0, [](Check& c) {
    const auto e = load("alcq.ex");
    const auto v = decide_alcq_fitting(e);
    c.expect(v.outcome == Outcome::FittingExists && v.ontology, "ALCQ: expected fitting-exists");
    for (Logic l : {Logic::ALC, Logic::ALCI}) {
      ExampleCollection x = e;
      x.logic = l;
      c.expect(decide_consistency_fitting(x).outcome == Outcome::NoFitting, to_string(l) + ": expected no-fitting");
    }
    if (v.ontology) {
      c.expect(check_consistency(e.positives[0].abox, *v.ontology, Logic::ALCQ), "positive should be consistent");
      c.expect(!check_consistency(e.negatives[0].abox, *v.ontology, Logic::ALCQ), "negative should be inconsistent");
    }
  });

  criterion(10, "entailment reduction cross-check (20 triples)", 300.0, [](Check& c) {
    int settled = 0;
    for (const auto& t : kTriples) {
      const ABox a = parse_abox(t.abox);
      const Ontology o = parse_ontology(t.ontology);
      const UCQ q = parse_ucq(t.query);
      const std::string name = std::string(t.abox) + " / " + t.ontology + " / " + t.query;
      // Size 4 when the enumeration stays below 2^24 structures per size.
      Signature sig = signature_of(o);
      sig.merge(signature_of(a));
      sig.merge(signature_of(q));
      const int size = sig.concepts.size() * 4 + sig.roles.size() * 16 <= 24 ? 4 : 3;
      const auto counter = oracle::small_countermodel(a, o, q, size);
      const auto exact = entails_ucq_bounded(a, o, q, Logic::ALCI).kind;
      const bool entailed = !counter;
      if (entailed && exact != EntailmentAnswer::Kind::Entailed) {
        c.expect(false, name + ": entailment not settled");
        continue;
      }
      c.expect(!(counter && exact == EntailmentAnswer::Kind::Entailed), name + ": oracle and reasoner disagree");
      ++settled;
      const auto e = preprocess_collection(generate_from_entailment(a, o, q.disjuncts.front()));
      Bounds b;
      b.depth_unit = 1;
      b.degree = 2;
      if (entailed) {
        b.finite_witness_size = 4;
        b.max_steps = 5000;
        b.max_mosaics = 2000;
        c.expect(decide_ucq_fitting(e, b).outcome != Outcome::FittingExists, name + ": fitting reported");
      } else {
        b.finite_witness_size = 8;
        b.max_steps = 20000;
        const auto v = decide_ucq_fitting(e, b);
        c.expect(v.outcome == Outcome::FittingExists && v.finite_witness, name + ": no finite witness");
      }
    }
    c.expect(settled == 20, std::to_string(settled) + "/20 settled");
  });

  criterion(11, "saturation adds at most heads x individuals (200)", 60.0, [&](Check& c) {
    int ok = 0;
    for (const auto& e : aq_suite) {
      std::set<std::string> heads;
      for (const auto& p : e.positives) heads.insert(p.query->disjuncts.front().concept_atoms.begin()->concept_name);
      const Completion s = saturate_refutation_candidate(e);
      if (s.added.size() <= heads.size() * s.base.individuals().size()) ++ok;
    }
    c.expect(ok == 200, std::to_string(ok) + "/200 within the bound");
  });

  criterion(12, "mosaic elimination is order-independent and decreasing (50)", 120.0, [](Check& c) {
    gen::Rng rng(12);
    Bounds b;
    b.depth_unit = 1;
    b.degree = 2;
    std::vector<std::vector<Mosaic>> seeds;
    for (const char* text : kMosaicSeeds) {
      const auto e = preprocess_collection(parse_collection(text));
      ChoiceFns ch;
      for (const auto& p : e.positives) ch.pos_component.push_back(components(p.abox).front());
      for (const auto& n : e.negatives) {
        std::vector<CQ> per;
        for (const auto& d : n.query->disjuncts) per.push_back(components(d).front());
        ch.neg_component.push_back(per);
      }
      seeds.push_back(enumerate_mosaics(e, ch, AvoidSet{}, 0, b));
    }
    int ok = 0;
    for (int i = 0; i < 50; ++i) {
      const auto& full = seeds[i % seeds.size()];
      std::vector<Mosaic> s0;
      if (i < static_cast<int>(seeds.size())) {
        s0 = full;
      } else {
        const double keep = 0.5 + 0.5 * std::uniform_real_distribution<double>(0, 1)(rng);
        for (const auto& m : full)
          if (gen::coin(rng, keep)) s0.push_back(m);
      }
      const auto g = eliminate_mosaics(s0, b.depth_unit, EliminationOrder::Generational);
      const auto r = eliminate_mosaics(s0, b.depth_unit, EliminationOrder::InPlaceReverse);
      const auto k0 = keys(s0);
      const auto kg = keys(g);
      const bool same = kg == keys(r);
      const bool decreasing = std::includes(k0.begin(), k0.end(), kg.begin(), kg.end());
      const bool fixpoint = keys(eliminate_mosaics(g, b.depth_unit)) == kg;
      if (same && decreasing && fixpoint) ++ok;
    }
    c.expect(ok == 50, std::to_string(ok) + "/50 sets behave");
  });

  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << "\n";
  return failed == 0 ? 0 : 1;
}
