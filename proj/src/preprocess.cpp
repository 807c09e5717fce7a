#include "ontofit/preprocess.hpp"

#include <map>

namespace ontofit {

namespace {

void collect(const Concept& c, Signature& s) {
  switch (c.kind()) {
    case Concept::Kind::Name:
      s.concepts.insert(c.concept_name());
      break;
    case Concept::Kind::Not:
      collect(c.operand(), s);
      break;
    case Concept::Kind::And:
    case Concept::Kind::Or:
      collect(c.left(), s);
      collect(c.right(), s);
      break;
    case Concept::Kind::Exists:
    case Concept::Kind::Forall:
    case Concept::Kind::AtMost:
    case Concept::Kind::AtLeast:
      s.roles.insert(c.role().name);
      collect(c.operand(), s);
      break;
    default:
      break;
  }
}

bool is_name(const Concept& c) { return c.kind() == Concept::Kind::Name; }

bool is_normal_ci(const Inclusion& ci) {
  const Concept& l = ci.lhs;
  const Concept& r = ci.rhs;
  using K = Concept::Kind;
  if (l.kind() == K::Top && is_name(r)) return true;
  if (l.kind() == K::And && is_name(l.left()) && is_name(l.right()) && is_name(r)) return true;
  if (is_name(l) && r.kind() == K::Exists && is_name(r.operand())) return true;
  if (l.kind() == K::Exists && is_name(l.operand()) && is_name(r)) return true;
  if (is_name(l) && r.kind() == K::Not && is_name(r.operand())) return true;
  if (l.kind() == K::Not && is_name(l.operand()) && is_name(r)) return true;
  return false;
}

class Normalizer {
 public:
  explicit Normalizer(std::set<std::string> taken) : taken_(std::move(taken)) {}

  std::vector<Inclusion> out;

  void add(const Inclusion& ci) {
    if (is_normal_ci(ci)) {
      out.push_back(ci);
      return;
    }
    if (ci.lhs.kind() == Concept::Kind::Top) {
      out.push_back({Concept::top(), Concept::name(name_of(ci.rhs))});
      return;
    }
    subsume(name_of(ci.lhs), name_of(ci.rhs));
  }

 private:
  std::set<std::string> taken_;
  std::map<Concept, std::string> cache_;

  std::string fresh() { return fresh_name("__f", taken_); }

  // A sub B through an intermediate name: A sub not N, not N sub B.
  void subsume(const std::string& a, const std::string& b) {
    if (a == b) return;
    std::string n = fresh();
    out.push_back({Concept::name(a), Concept::negate(Concept::name(n))});
    out.push_back({Concept::negate(Concept::name(n)), Concept::name(b)});
  }

  std::string name_of(const Concept& c) {
    using K = Concept::Kind;
    if (c.kind() == K::Name) return c.concept_name();
    if (auto it = cache_.find(c); it != cache_.end()) return it->second;
    std::string x;
    switch (c.kind()) {
      case K::Top:
        x = fresh();
        out.push_back({Concept::top(), Concept::name(x)});
        break;
      case K::Bottom:
        x = fresh();
        out.push_back({Concept::name(x), Concept::negate(Concept::name(x))});
        break;
      case K::Not: {
        std::string y = name_of(c.operand());
        x = fresh();
        out.push_back({Concept::name(x), Concept::negate(Concept::name(y))});
        out.push_back({Concept::negate(Concept::name(y)), Concept::name(x)});
        break;
      }
      case K::And: {
        std::string y = name_of(c.left());
        std::string z = name_of(c.right());
        x = fresh();
        out.push_back({Concept::conj(Concept::name(y), Concept::name(z)), Concept::name(x)});
        subsume(x, y);
        subsume(x, z);
        break;
      }
      case K::Or:
        x = name_of(Concept::negate(Concept::conj(Concept::negate(c.left()), Concept::negate(c.right()))));
        break;
      case K::Exists: {
        std::string y = name_of(c.operand());
        x = fresh();
        out.push_back({Concept::name(x), Concept::exists(c.role(), Concept::name(y))});
        out.push_back({Concept::exists(c.role(), Concept::name(y)), Concept::name(x)});
        break;
      }
      case K::Forall:
        x = name_of(Concept::negate(Concept::exists(c.role(), Concept::negate(c.operand()))));
        break;
      default:
        throw ContractError("normal form does not support number restrictions");
    }
    cache_[c] = x;
    return x;
  }
};

Term rename_term(const Term& t, const std::string& suffix) {
  return t.var ? t : Term::individual(t.name + suffix);
}

ABox rename(const ABox& a, const std::string& suffix) {
  ABox out;
  for (const auto& c : a.concepts) out.add(ConceptAssertion{c.concept_name, c.ind + suffix});
  for (const auto& r : a.roles) out.add(RoleAssertion{r.role, r.from + suffix, r.to + suffix});
  return out;
}

CQ rename(const CQ& q, const std::string& suffix) {
  CQ out;
  out.vars = q.vars;
  for (const auto& c : q.concept_atoms) out.concept_atoms.insert({c.concept_name, rename_term(c.t, suffix)});
  for (const auto& r : q.role_atoms)
    out.role_atoms.insert({r.role, rename_term(r.from, suffix), rename_term(r.to, suffix)});
  return out;
}

Example rename(const Example& e, std::size_t k) {
  std::string suffix = "#" + std::to_string(k);
  Example out;
  out.abox = rename(e.abox, suffix);
  if (e.query) {
    UCQ u;
    for (const auto& d : e.query->disjuncts) u.disjuncts.push_back(rename(d, suffix));
    out.query = u;
  }
  return out;
}

std::vector<Example> split_components(const Example& e) {
  std::vector<std::vector<CQ>> options;
  for (const auto& d : e.query->disjuncts) options.push_back(components(d));
  std::vector<Example> out;
  std::vector<std::size_t> pick(options.size(), 0);
  while (true) {
    Example x;
    x.abox = e.abox;
    UCQ u;
    for (std::size_t i = 0; i < options.size(); ++i) u.disjuncts.push_back(options[i][pick[i]]);
    x.query = u;
    out.push_back(std::move(x));
    std::size_t i = 0;
    while (i < pick.size() && ++pick[i] == options[i].size()) pick[i++] = 0;
    if (i == pick.size()) break;
  }
  return out;
}

}  // namespace

Signature signature_of(const Concept& c) {
  Signature s;
  collect(c, s);
  return s;
}

Signature signature_of(const Ontology& o) {
  Signature s;
  for (const auto& ci : o.inclusions) {
    collect(ci.lhs, s);
    collect(ci.rhs, s);
  }
  return s;
}

Signature signature_of(const ABox& a) {
  Signature s;
  for (const auto& c : a.concepts) s.concepts.insert(c.concept_name);
  for (const auto& r : a.roles) s.roles.insert(r.role);
  return s;
}

Signature signature_of(const CQ& q) {
  Signature s;
  for (const auto& c : q.concept_atoms) s.concepts.insert(c.concept_name);
  for (const auto& r : q.role_atoms) s.roles.insert(r.role);
  return s;
}

Signature signature_of(const UCQ& q) {
  Signature s;
  for (const auto& d : q.disjuncts) s.merge(signature_of(d));
  return s;
}

Signature signature_of(const ExampleCollection& e) {
  Signature s;
  for (const auto* list : {&e.positives, &e.negatives}) {
    for (const auto& x : *list) {
      s.merge(signature_of(x.abox));
      if (x.query) s.merge(signature_of(*x.query));
    }
  }
  return s;
}

std::string fresh_name(const std::string& prefix, std::set<std::string>& taken) {
  for (std::size_t k = 0;; ++k) {
    std::string n = prefix + std::to_string(k);
    if (taken.insert(n).second) return n;
  }
}

bool is_normal_form(const Ontology& o) {
  for (const auto& ci : o.inclusions)
    if (!is_normal_ci(ci)) return false;
  return true;
}

Ontology normalize_ontology(const Ontology& o) {
  for (const auto& ci : o.inclusions)
    if (ci.lhs.uses_counting() || ci.rhs.uses_counting())
      throw ContractError("normal form does not support number restrictions");
  if (is_normal_form(o)) return o;
  Normalizer n(signature_of(o).concepts);
  for (const auto& ci : o.inclusions) n.add(ci);
  Ontology out;
  out.logic = o.logic;
  out.inclusions = std::move(n.out);
  return out;
}

ExampleCollection preprocess_collection(const ExampleCollection& e) {
  check_well_formed(e);
  std::vector<Example> positives;
  for (const auto& x : e.positives) {
    if (e.mode == Mode::UCQ) {
      if (x.abox.empty()) throw ContractError("ucq mode requires non-empty positive ABoxes");
      for (auto& y : split_components(x)) positives.push_back(std::move(y));
    } else {
      positives.push_back(x);
    }
  }
  ExampleCollection out;
  out.mode = e.mode;
  out.logic = e.logic;
  std::size_t k = 0;
  for (const auto& x : positives) out.positives.push_back(rename(x, k++));
  for (const auto& x : e.negatives) out.negatives.push_back(rename(x, k++));
  return out;
}

std::string least_individual(const ABox& a) {
  auto inds = a.individuals();
  if (inds.empty()) throw ContractError("empty ABox has no individual to anchor a fresh concept");
  return *inds.begin();
}

ExampleCollection reduce_consistent_fitting(const ExampleCollection& e) {
  if (e.mode == Mode::Consistency) throw ContractError("reduction expects a query mode");
  ExampleCollection out = e;
  std::set<std::string> taken = signature_of(e).concepts;
  for (const auto& x : e.positives) {
    std::string a = least_individual(x.abox);
    Example n;
    n.abox = x.abox;
    n.query = single(aq(fresh_name("__X", taken), a));
    out.negatives.push_back(std::move(n));
  }
  return out;
}

}  // namespace ontofit

namespace ontofit {

ABox rename_individuals(const ABox& a, const std::map<std::string, std::string>& m) {
  auto tr = [&](const std::string& x) {
    auto it = m.find(x);
    return it == m.end() ? x : it->second;
  };
  ABox out;
  for (const auto& c : a.concepts) out.add(ConceptAssertion{c.concept_name, tr(c.ind)});
  for (const auto& r : a.roles) out.add(RoleAssertion{r.role, tr(r.from), tr(r.to)});
  return out;
}

CQ rename_individuals(const CQ& q, const std::map<std::string, std::string>& m) {
  auto tr = [&](const Term& t) {
    if (t.var) return t;
    auto it = m.find(t.name);
    return it == m.end() ? t : Term::individual(it->second);
  };
  CQ out;
  for (const auto& c : q.concept_atoms) out.concept_atoms.insert({c.concept_name, tr(c.t)});
  for (const auto& r : q.role_atoms) out.role_atoms.insert({r.role, tr(r.from), tr(r.to)});
  out.vars = q.vars;
  return out;
}

DisjointUnion disjoint_abox_union(const std::vector<ABox>& parts) {
  std::map<std::string, int> occurrences;
  std::vector<std::set<std::string>> inds;
  for (const auto& p : parts) {
    inds.push_back(p.individuals());
    for (const auto& i : inds.back()) ++occurrences[i];
  }
  DisjointUnion out;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    std::map<std::string, std::string> m;
    for (const auto& i : inds[k]) m[i] = occurrences[i] > 1 ? i + "#" + std::to_string(k) : i;
    out.abox.merge(rename_individuals(parts[k], m));
    out.renaming.push_back(std::move(m));
  }
  return out;
}

}  // namespace ontofit
