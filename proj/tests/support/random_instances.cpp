#include "random_instances.hpp"

namespace gen {

namespace {

const std::vector<std::string> kConcepts = {"A", "B", "C"};
const std::vector<std::string> kRoles = {"r"};
const std::vector<std::string> kInds = {"a", "b", "c"};

std::vector<std::string> first(int n) { return {kInds.begin(), kInds.begin() + n}; }

ABox nonempty_abox(Rng& rng, int individuals) {
  ABox a = random_abox(rng, first(individuals), kConcepts, kRoles, 0.3);
  if (a.empty()) a.add(ConceptAssertion{kConcepts[pick(rng, 0, 2)], "a"});
  return a;
}

std::string some_individual(Rng& rng, const ABox& a) {
  const auto s = a.individuals();
  std::vector<std::string> v(s.begin(), s.end());
  return v[pick(rng, 0, static_cast<int>(v.size()) - 1)];
}

// Splits at most 3 examples into polarities keeping the negatives' individuals at 3.
template <typename Make>
ExampleCollection collection(Rng& rng, Mode mode, Make make) {
  ExampleCollection e;
  e.mode = mode;
  e.logic = coin(rng) ? Logic::ALC : Logic::ALCI;
  const int n = pick(rng, 1, 3);
  int negative_individuals = 0;
  for (int k = 0; k < n; ++k) {
    const bool positive = coin(rng);
    int size = pick(rng, 1, 3);
    if (!positive) {
      size = std::min(size, 3 - negative_individuals);
      if (size == 0) {
        e.positives.push_back(make(pick(rng, 1, 3)));
        continue;
      }
    }
    Example x = make(size);
    if (positive) {
      e.positives.push_back(std::move(x));
    } else {
      negative_individuals += static_cast<int>(x.abox.individuals().size());
      e.negatives.push_back(std::move(x));
    }
  }
  return e;
}

}  // namespace

int pick(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

ABox random_abox(Rng& rng, const std::vector<std::string>& individuals, const std::vector<std::string>& concepts,
                 const std::vector<std::string>& roles, double p) {
  ABox a;
  for (const auto& i : individuals)
    for (const auto& c : concepts)
      if (coin(rng, p)) a.add(ConceptAssertion{c, i});
  for (const auto& r : roles)
    for (const auto& i : individuals)
      for (const auto& j : individuals)
        if (coin(rng, p)) a.add(RoleAssertion{r, i, j});
  return a;
}

Concept random_concept(Rng& rng, int depth, const std::vector<std::string>& concepts,
                       const std::vector<std::string>& roles, bool inverse) {
  if (depth == 0 || coin(rng, 0.3)) {
    switch (pick(rng, 0, 5)) {
      case 0:
        return Concept::top();
      case 1:
        return Concept::bottom();
      default:
        return Concept::name(concepts[pick(rng, 0, static_cast<int>(concepts.size()) - 1)]);
    }
  }
  auto sub = [&] { return random_concept(rng, depth - 1, concepts, roles, inverse); };
  auto role = [&] { return Role{roles[pick(rng, 0, static_cast<int>(roles.size()) - 1)], inverse && coin(rng)}; };
  switch (pick(rng, 0, 4)) {
    case 0:
      return Concept::negate(sub());
    case 1:
      return Concept::conj(sub(), sub());
    case 2:
      return Concept::disj(sub(), sub());
    case 3:
      return Concept::exists(role(), sub());
    default:
      return Concept::forall(role(), sub());
  }
}

Ontology random_ontology(Rng& rng, int inclusions, int depth, const std::vector<std::string>& concepts,
                         const std::vector<std::string>& roles, Logic logic) {
  Ontology o;
  o.logic = logic;
  for (int k = 0; k < inclusions; ++k) {
    const bool inv = logic == Logic::ALCI;
    o.inclusions.push_back({random_concept(rng, depth, concepts, roles, inv),
                            random_concept(rng, depth, concepts, roles, inv)});
  }
  return o;
}

Interpretation random_interpretation(Rng& rng, int size, const std::vector<std::string>& concepts,
                                     const std::vector<std::string>& roles, double p) {
  Interpretation i;
  for (int d = 0; d < size; ++d) i.add_element("e" + std::to_string(d));
  for (const auto& c : concepts)
    for (int d = 0; d < size; ++d)
      if (coin(rng, p)) i.add_concept(c, d);
  for (const auto& r : roles)
    for (int d = 0; d < size; ++d)
      for (int e = 0; e < size; ++e)
        if (coin(rng, p)) i.add_role(r, d, e);
  return i;
}

CQ random_cq(Rng& rng, int vars, const std::vector<std::string>& individuals, const std::vector<std::string>& concepts,
             const std::vector<std::string>& roles) {
  std::vector<Term> terms;
  for (int k = 0; k < vars; ++k) terms.push_back(Term::variable("x" + std::to_string(k)));
  for (const auto& i : individuals) terms.push_back(Term::individual(i));
  auto term = [&] { return terms[pick(rng, 0, static_cast<int>(terms.size()) - 1)]; };
  CQ q;
  const int atoms = pick(rng, 1, 3);
  for (int k = 0; k < atoms; ++k) {
    if (roles.empty() || coin(rng))
      q.concept_atoms.insert({concepts[pick(rng, 0, static_cast<int>(concepts.size()) - 1)], term()});
    else
      q.role_atoms.insert({roles[pick(rng, 0, static_cast<int>(roles.size()) - 1)], term(), term()});
  }
  // Every variable must occur.
  for (int k = 0; k < vars; ++k) q.concept_atoms.insert({concepts[0], terms[k]});
  q.normalize_vars();
  return q;
}

ExampleCollection random_consistency(Rng& rng) {
  return collection(rng, Mode::Consistency, [&](int n) {
    Example x;
    x.abox = nonempty_abox(rng, n);
    return x;
  });
}

ExampleCollection random_aq(Rng& rng) {
  return collection(rng, Mode::AQ, [&](int n) {
    Example x;
    x.abox = nonempty_abox(rng, n);
    x.query = single(aq(kConcepts[pick(rng, 0, 2)], some_individual(rng, x.abox)));
    return x;
  });
}

ExampleCollection random_fullcq(Rng& rng) {
  return collection(rng, Mode::FullCQ, [&](int n) {
    Example x;
    x.abox = nonempty_abox(rng, n);
    CQ q;
    const int atoms = pick(rng, 1, 2);
    for (int k = 0; k < atoms; ++k) {
      if (coin(rng, 0.75))
        q.concept_atoms.insert({kConcepts[pick(rng, 0, 2)], Term::individual(some_individual(rng, x.abox))});
      else
        q.role_atoms.insert({"r", Term::individual(some_individual(rng, x.abox)),
                             Term::individual(some_individual(rng, x.abox))});
    }
    x.query = single(q);
    return x;
  });
}

}  // namespace gen
