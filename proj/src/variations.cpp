#include "ontofit/variations.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "ontofit/semantics.hpp"
#include "ontofit/text.hpp"

namespace ontofit {

namespace {

CQ substitute(const CQ& p, const std::map<std::string, Term>& sub) {
  auto tr = [&](const Term& t) { return t.var ? sub.at(t.name) : t; };
  CQ out;
  for (const auto& c : p.concept_atoms) out.concept_atoms.insert({c.concept_name, tr(c.t)});
  for (const auto& r : p.role_atoms) out.role_atoms.insert({r.role, tr(r.from), tr(r.to)});
  out.normalize_vars();
  return out;
}

// Serialization under the lexicographically least renaming of variables.
std::string canonical_key(const CQ& q) {
  std::vector<std::string> vars(q.vars.begin(), q.vars.end());
  if (vars.size() > 7) return serialize(q);
  std::vector<int> perm(vars.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::string best;
  bool first = true;
  do {
    std::map<std::string, Term> sub;
    for (std::size_t i = 0; i < vars.size(); ++i) sub[vars[i]] = Term::variable("v" + std::to_string(perm[i]));
    std::string k = serialize(substitute(q, sub));
    if (first || k < best) best = k;
    first = false;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace

bool is_proper_variation(const CQ& pv, const ABox& a, Logic logic) {
  for (const auto& r : pv.role_atoms)
    if (!r.from.var && !r.to.var && !a.has(RoleAssertion{r.role, r.from.name, r.to.name})) return false;
  Interpretation i = from_cq(pv);
  std::set<Element> inds;
  for (const auto& [n, d] : i.names) inds.insert(d);
  return is_forest_shaped(i, inds, logic);
}

std::vector<CQ> enumerate_proper_variations(const CQ& p, const ABox& a, Logic logic) {
  const auto inds_a = a.individuals();
  for (const auto& i : p.individuals())
    if (!inds_a.count(i)) return {};
  const std::vector<std::string> vars(p.vars.begin(), p.vars.end());
  const std::vector<std::string> inds(inds_a.begin(), inds_a.end());
  std::vector<CQ> out;
  std::set<std::string> seen;
  std::vector<int> block(vars.size(), 0);

  std::function<void(std::size_t, int)> partitions = [&](std::size_t i, int blocks) {
    if (i == vars.size()) {
      // Each block stays a variable (-1) or becomes an individual.
      std::vector<int> target(blocks, -1);
      std::function<void(int)> assign = [&](int b) {
        if (b == blocks) {
          std::map<std::string, Term> sub;
          for (std::size_t v = 0; v < vars.size(); ++v) {
            int t = target[block[v]];
            if (t >= 0) {
              sub[vars[v]] = Term::individual(inds[t]);
            } else {
              // Name the block after its first variable.
              std::size_t rep = 0;
              while (block[rep] != block[v]) ++rep;
              sub[vars[v]] = Term::variable(vars[rep]);
            }
          }
          CQ pv = substitute(p, sub);
          if (!is_proper_variation(pv, a, logic)) return;
          if (seen.insert(canonical_key(pv)).second) out.push_back(std::move(pv));
          return;
        }
        for (int t = -1; t < static_cast<int>(inds.size()); ++t) {
          target[b] = t;
          assign(b + 1);
        }
      };
      assign(0);
      return;
    }
    for (int b = 0; b <= blocks; ++b) {
      block[i] = b;
      partitions(i + 1, std::max(blocks, b + 1));
    }
  };
  partitions(0, 0);
  return out;
}

std::optional<RolledVariation> roll_up(const CQ& pv, Logic logic) {
  RolledVariation out;
  // Tree edges: every role atom not between two individuals.
  std::map<std::pair<Term, Term>, int> multiplicity;
  std::map<Term, std::vector<std::pair<Role, Term>>> adj;
  for (const auto& r : pv.role_atoms) {
    if (!r.from.var && !r.to.var) continue;
    auto key = std::minmax(r.from, r.to);
    if (++multiplicity[{key.first, key.second}] > 1) return std::nullopt;
    adj[r.from].push_back({Role{r.role, false}, r.to});
    adj[r.to].push_back({Role{r.role, true}, r.from});
  }
  std::map<Term, std::vector<std::string>> labels;
  for (const auto& c : pv.concept_atoms) {
    if (c.t.var)
      labels[c.t].push_back(c.concept_name);
    else
      out.ground.push_back({c.concept_name, c.t.name});
  }
  // Concept of the subtree at t, entered from `from`; counts variables.
  std::function<Concept(const Term&, const Term*, int&)> roll = [&](const Term& t, const Term* from, int& count) {
    ++count;
    Concept c = Concept::top();
    bool empty = true;
    auto conj = [&](Concept d) {
      c = empty ? d : Concept::conj(c, d);
      empty = false;
    };
    for (const auto& l : labels[t]) conj(Concept::name(l));
    for (const auto& [r, u] : adj[t]) {
      if (from && u == *from) continue;
      conj(Concept::exists(r, roll(u, &t, count)));
    }
    return c;
  };
  std::set<Term> done;
  std::function<void(const Term&)> mark = [&](const Term& t) {
    if (!t.var || !done.insert(t).second) return;
    for (const auto& [r, u] : adj[t]) mark(u);
  };
  for (const auto& t : pv.terms()) {
    if (t.var) continue;
    for (const auto& [r, u] : adj[t]) {
      int count = 0;
      out.attached.push_back({t.name, Concept::exists(r, roll(u, &t, count))});
      out.radius = std::max(out.radius, count);
      mark(u);
    }
  }
  for (const auto& t : pv.terms()) {
    if (!t.var || done.count(t)) continue;
    Term root = t;
    if (logic != Logic::ALCI) {
      // Climb to the node without predecessors.
      for (bool moved = true; moved;) {
        moved = false;
        for (const auto& [r, u] : adj[root])
          if (r.inverted) {
            root = u;
            moved = true;
            break;
          }
      }
    }
    int count = 0;
    out.floating.push_back(roll(root, nullptr, count));
    out.radius = -1;
    mark(root);
  }
  return out;
}

bool has_compatible_variation(const std::vector<CQ>& variations, const ABox& a, const Mapping& h,
                              const Interpretation& target, Logic logic) {
  std::vector<Element> anchors;
  for (const auto& ind : a.individuals()) anchors.push_back(h.of_individual(ind));
  std::sort(anchors.begin(), anchors.end());
  anchors.erase(std::unique(anchors.begin(), anchors.end()), anchors.end());
  for (const auto& pv : variations) {
    HomConstraints c;
    c.weak = true;
    for (const auto& ind : pv.individuals()) c.fixed[Term::individual(ind)] = h.of_individual(ind);
    c.reachability_anchors = anchors;
    c.reachability_logic = logic == Logic::ALCI ? Logic::ALCI : Logic::ALC;
    if (has_homomorphism(pv, target, c)) return true;
  }
  return false;
}

}  // namespace ontofit
