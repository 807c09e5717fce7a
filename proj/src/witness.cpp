#include "ontofit/witness.hpp"

#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

#include "ontofit/hom.hpp"
#include "ontofit/preprocess.hpp"
#include "ontofit/semantics.hpp"
#include "ontofit/variations.hpp"

namespace ontofit {

namespace {

void require_disjoint_negatives(const ExampleCollection& e) {
  std::set<std::string> seen;
  for (const auto& n : e.negatives)
    for (const auto& i : n.abox.individuals())
      if (!seen.insert(i).second) throw ContractError("negative ABoxes share individual " + i);
}

std::vector<std::vector<CQ>> positive_variations(const ExampleCollection& e, Logic logic) {
  std::vector<std::vector<CQ>> out;
  for (const auto& p : e.positives) {
    std::vector<CQ> vs;
    if (p.query)
      for (const auto& d : p.query->disjuncts)
        for (auto& pv : enumerate_proper_variations(d, p.abox, logic)) vs.push_back(std::move(pv));
    out.push_back(std::move(vs));
  }
  return out;
}

Interpretation part_of(const FiniteWitness& w, int n) {
  std::set<Element> keep;
  for (Element d = 0; d < w.j.size(); ++d)
    if (w.part[d] == n) keep.insert(d);
  return w.j.restrict(keep);
}

bool negatives_refuted(const FiniteWitness& w, const ExampleCollection& e) {
  for (std::size_t n = 0; n < e.negatives.size(); ++n) {
    const Interpretation jn = part_of(w, static_cast<int>(n));
    if (!is_model(jn, e.negatives[n].abox)) return false;
    if (e.negatives[n].query && evaluate_query(jn, *e.negatives[n].query)) return false;
  }
  return true;
}

// First homomorphism from a positive ABox into j without a compatible variation.
std::optional<std::pair<std::size_t, Mapping>> violation(const Interpretation& j, const ExampleCollection& e,
                                                         const std::vector<std::vector<CQ>>& vars, Logic logic) {
  for (std::size_t i = 0; i < e.positives.size(); ++i)
    for (const auto& h : homomorphisms(e.positives[i].abox, j))
      if (!has_compatible_variation(vars[i], e.positives[i].abox, h, j, logic)) return std::make_pair(i, h);
  return std::nullopt;
}

void check_partition(const FiniteWitness& w, const ExampleCollection& e) {
  if (static_cast<int>(w.part.size()) != w.j.size()) throw ContractError("partition does not cover the witness");
  for (int p : w.part)
    if (p < 0 || p >= static_cast<int>(e.negatives.size())) throw ContractError("partition names no negative example");
  for (const auto& [r, ext] : w.j.roles)
    for (const auto& [x, y] : ext)
      if (w.part[x] != w.part[y]) throw ContractError("role edge " + r + " crosses parts");
  for (std::size_t n = 0; n < e.negatives.size(); ++n)
    for (const auto& i : e.negatives[n].abox.individuals()) {
      auto d = w.j.element_of(i);
      if (!d || w.part[*d] != static_cast<int>(n)) throw ContractError("individual " + i + " is not in its part");
    }
}

std::string state_key(const FiniteWitness& w) {
  std::ostringstream out;
  for (int p : w.part) out << p << ",";
  for (const auto& [c, ext] : w.j.concepts) {
    out << c << ":";
    for (Element d : ext) out << d << ",";
  }
  for (const auto& [r, ext] : w.j.roles) {
    out << r << ":";
    for (const auto& [x, y] : ext) out << x << "-" << y << ",";
  }
  return out.str();
}

}  // namespace

bool check_finite_witness(const FiniteWitness& w, const ExampleCollection& e, Logic logic) {
  require_disjoint_negatives(e);
  check_partition(w, e);
  if (!negatives_refuted(w, e)) return false;
  return !violation(w.j, e, positive_variations(e, logic), logic);
}

std::optional<FiniteWitness> search_finite_witness(const ExampleCollection& e, Logic logic, const Bounds& b) {
  if (e.mode != Mode::UCQ) throw ContractError("search_finite_witness needs ucq mode");
  if (logic == Logic::ALCQ) throw ContractError("finite witnesses are built for ALC and ALCI");
  require_disjoint_negatives(e);
  FiniteWitness start;
  std::vector<int> cap;
  for (std::size_t n = 0; n < e.negatives.size(); ++n) {
    const Interpretation a = from_abox(e.negatives[n].abox);
    start.j = disjoint_union(start.j, a);
    start.part.insert(start.part.end(), a.size(), static_cast<int>(n));
    cap.push_back(std::max(b.finite_witness_size, a.size()));
  }
  if (!negatives_refuted(start, e)) return std::nullopt;
  const auto vars = positive_variations(e, logic);
  std::set<std::string> seen;
  long steps = 0;

  std::function<std::optional<FiniteWitness>(const FiniteWitness&)> search =
      [&](const FiniteWitness& w) -> std::optional<FiniteWitness> {
    if (++steps > b.max_steps || !seen.insert(state_key(w)).second) return std::nullopt;
    auto bad = violation(w.j, e, vars, logic);
    if (!bad) return w;
    const auto& [i, h] = *bad;
    const ABox& a = e.positives[i].abox;
    for (const auto& pv : vars[i]) {
      const std::vector<std::string> xs(pv.vars.begin(), pv.vars.end());
      // Target per variable: -1 for a fresh element, else an existing one.
      std::vector<int> target(xs.size(), -1);
      std::function<std::optional<FiniteWitness>(std::size_t)> assign =
          [&](std::size_t k) -> std::optional<FiniteWitness> {
        if (k < xs.size()) {
          for (int t = -1; t < w.j.size(); ++t) {
            target[k] = t;
            if (auto r = assign(k + 1)) return r;
          }
          return std::nullopt;
        }
        FiniteWitness next = w;
        std::map<Term, Element> img;
        for (const auto& ind : pv.individuals()) img[Term::individual(ind)] = h.of_individual(ind);
        for (std::size_t v = 0; v < xs.size(); ++v) {
          if (target[v] >= 0) {
            img[Term::variable(xs[v])] = target[v];
          } else {
            img[Term::variable(xs[v])] = next.j.add_element("_" + std::to_string(next.j.size()));
            next.part.push_back(-1);
          }
        }
        // Fresh elements join the part of an element they are linked to.
        for (bool changed = true; changed;) {
          changed = false;
          for (const auto& r : pv.role_atoms) {
            int& pf = next.part[img[r.from]];
            int& pt = next.part[img[r.to]];
            if (pf < 0 && pt >= 0) {
              pf = pt;
              changed = true;
            } else if (pt < 0 && pf >= 0) {
              pt = pf;
              changed = true;
            }
          }
        }
        for (int p : next.part)
          if (p < 0) return std::nullopt;
        for (const auto& r : pv.role_atoms) {
          if (next.part[img[r.from]] != next.part[img[r.to]]) return std::nullopt;
          next.j.add_role(r.role, img[r.from], img[r.to]);
        }
        for (const auto& c : pv.concept_atoms) next.j.add_concept(c.concept_name, img[c.t]);
        std::vector<int> size(cap.size(), 0);
        for (int p : next.part)
          if (++size[p] > cap[p]) return std::nullopt;
        if (!has_compatible_variation({pv}, a, h, next.j, logic)) return std::nullopt;
        if (!negatives_refuted(next, e)) return std::nullopt;
        return search(next);
      };
      if (auto r = assign(0)) return r;
    }
    return std::nullopt;
  };
  return search(start);
}

Ontology synthesize_vd_ontology(const FiniteWitness& w, const ExampleCollection& e, Logic logic) {
  if (!check_finite_witness(w, e, logic)) throw ContractError("the interpretation is not a finite witness");
  Signature sig = signature_of(e);
  sig.merge(w.j.signature());
  std::set<std::string> taken = sig.concepts;
  std::vector<std::string> v;
  for (Element d = 0; d < w.j.size(); ++d) {
    std::string n = "__V" + std::to_string(d);
    while (taken.count(n)) n += "_";
    taken.insert(n);
    v.push_back(n);
  }
  Ontology o;
  o.logic = logic;
  if (w.j.size() == 0) {
    o.inclusions.push_back({Concept::top(), Concept::bottom()});
    return o;
  }
  Concept all = Concept::name(v[0]);
  for (Element d = 1; d < w.j.size(); ++d) all = Concept::disj(all, Concept::name(v[d]));
  o.inclusions.push_back({Concept::top(), all});
  for (Element d = 0; d < w.j.size(); ++d)
    for (Element f = d + 1; f < w.j.size(); ++f)
      o.inclusions.push_back({Concept::conj(Concept::name(v[d]), Concept::name(v[f])), Concept::bottom()});
  std::vector<Role> roles;
  for (const auto& r : sig.roles) {
    roles.push_back(Role{r, false});
    if (logic == Logic::ALCI) roles.push_back(Role{r, true});
  }
  for (Element d = 0; d < w.j.size(); ++d) {
    const Concept vd = Concept::name(v[d]);
    for (const auto& c : sig.concepts)
      o.inclusions.push_back({vd, w.j.has_concept(c, d) ? Concept::name(c) : Concept::negate(Concept::name(c))});
    for (const auto& r : roles)
      for (Element f = 0; f < w.j.size(); ++f) {
        const Concept vf = Concept::name(v[f]);
        if (w.j.has_role(r, d, f))
          o.inclusions.push_back({vd, Concept::exists(r, vf)});
        else
          o.inclusions.push_back({vd, Concept::forall(r, Concept::negate(vf))});
      }
  }
  Interpretation ext = w.j;
  for (Element d = 0; d < w.j.size(); ++d) ext.add_concept(v[d], d);
  if (!is_model(ext, o)) throw std::logic_error("the witness with V_d = {d} is not a model of its V_d ontology");
  return o;
}

}  // namespace ontofit
