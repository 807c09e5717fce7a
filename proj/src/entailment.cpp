#include "ontofit/entailment.hpp"

#include <functional>
#include <set>

#include "ontofit/reasoner.hpp"
#include "ontofit/semantics.hpp"
#include "ontofit/variations.hpp"

namespace ontofit {

namespace {

// A concept-level condition whose failure falsifies one variation.
struct Literal {
  std::optional<std::string> ind;  // assertion ind : not C, or C sub bottom when absent
  Concept c;
  std::string key;
};

KnowledgeBase extend(const KnowledgeBase& base, const std::vector<Literal>& lits) {
  KnowledgeBase kb = base;
  for (const auto& l : lits) {
    if (l.ind)
      kb.assertions.push_back({*l.ind, Concept::negate(l.c)});
    else
      kb.ontology.inclusions.push_back({l.c, Concept::bottom()});
  }
  return kb;
}

}  // namespace

std::string to_string(EntailmentAnswer::Kind k) {
  switch (k) {
    case EntailmentAnswer::Kind::Entailed: return "entailed";
    case EntailmentAnswer::Kind::NotEntailed: return "not-entailed";
    case EntailmentAnswer::Kind::Unknown: return "unknown";
  }
  return "unknown";
}

bool check_consistency(const ABox& a, const Ontology& o, Logic /*logic*/) {
  return is_consistent(KnowledgeBase{a, {}, o});
}

bool entails_ground(const ABox& a, const Ontology& o, const CQ& q) {
  if (!q.vars.empty()) throw ContractError("entails_ground needs a query without variables");
  KnowledgeBase kb{a, {}, o};
  if (!is_consistent(kb)) return true;
  for (const auto& r : q.role_atoms)
    if (!a.has(RoleAssertion{r.role, r.from.name, r.to.name})) return false;
  for (const auto& c : q.concept_atoms) {
    KnowledgeBase k = kb;
    k.assertions.push_back({c.t.name, Concept::negate(Concept::name(c.concept_name))});
    if (is_consistent(k)) return false;
  }
  return true;
}

EntailmentAnswer entails_ucq_bounded(const ABox& a, const Ontology& o, const UCQ& q, Logic logic,
                                     const EntailBounds& bounds) {
  using Kind = EntailmentAnswer::Kind;
  EntailmentAnswer out;
  const KnowledgeBase base{a, {}, o};
  if (!is_consistent(base)) {
    out.kind = Kind::Entailed;
    out.diagnostics = "ABox is inconsistent with the ontology";
    return out;
  }
  const Logic vl = logic == Logic::ALCI ? Logic::ALCI : Logic::ALC;
  std::vector<std::vector<Literal>> variations;
  int skipped = 0;
  for (const auto& p : q.disjuncts) {
    for (const auto& pv : enumerate_proper_variations(p, a, vl)) {
      auto rolled = roll_up(pv, vl);
      if (!rolled) {
        ++skipped;
        continue;
      }
      std::vector<Literal> lits;
      for (const auto& g : rolled->ground) {
        Concept c = Concept::name(g.concept_name);
        lits.push_back({g.ind, c, g.ind + ":" + c.to_string()});
      }
      for (const auto& [ind, c] : rolled->attached) lits.push_back({ind, c, ind + ":" + c.to_string()});
      for (const auto& c : rolled->floating) lits.push_back({std::nullopt, c, "*:" + c.to_string()});
      if (lits.empty()) {
        out.kind = Kind::Entailed;
        out.diagnostics = "a variation of the query is contained in the ABox";
        return out;
      }
      variations.push_back(std::move(lits));
    }
  }

  std::vector<Literal> chosen;
  std::set<std::string> keys;
  std::function<bool(std::size_t)> select = [&](std::size_t i) {
    if (i == variations.size()) return true;
    for (const auto& l : variations[i])
      if (keys.count(l.key)) return select(i + 1);
    for (const auto& l : variations[i]) {
      chosen.push_back(l);
      keys.insert(l.key);
      if (is_consistent(extend(base, chosen)) && select(i + 1)) return true;
      keys.erase(l.key);
      chosen.pop_back();
    }
    return false;
  };
  if (!select(0)) {
    out.kind = Kind::Entailed;
    out.diagnostics = "every way of falsifying all query variations is inconsistent";
    if (skipped) out.diagnostics += " (" + std::to_string(skipped) + " variations with parallel atoms not rolled up)";
    return out;
  }

  const KnowledgeBase kb = extend(base, chosen);
  for (int depth = 0; depth <= bounds.max_depth; depth = depth == 0 ? 1 : depth * 2) {
    std::optional<Interpretation> model;
    try {
      model = build_model(kb, depth, bounds.max_model_size);
    } catch (const ContractError& e) {
      out.diagnostics = std::string("countermodel not materialized: ") + e.what();
      return out;
    }
    if (model && is_model(*model, o) && is_model(*model, a) && !evaluate_query(*model, q)) {
      out.kind = Kind::NotEntailed;
      out.countermodel = std::move(model);
      return out;
    }
  }
  out.diagnostics = "a countermodel exists but none was materialized up to unfolding depth " +
                    std::to_string(bounds.max_depth);
  return out;
}

}  // namespace ontofit
