#include "ontofit/semantics.hpp"

#include <algorithm>
#include <functional>

namespace ontofit {

namespace {

using Bits = std::vector<char>;

// Successor lists of `r` in `i`, following the role backwards when inverted.
std::vector<std::vector<Element>> successors(const Interpretation& i, const Role& r) {
  std::vector<std::vector<Element>> out(i.size());
  auto it = i.roles.find(r.name);
  if (it == i.roles.end()) return out;
  for (const auto& [x, y] : it->second) {
    if (r.inverted)
      out[y].push_back(x);
    else
      out[x].push_back(y);
  }
  return out;
}

Bits eval(const Interpretation& i, const Concept& c) {
  const int n = i.size();
  using K = Concept::Kind;
  switch (c.kind()) {
    case K::Top:
      return Bits(n, 1);
    case K::Bottom:
      return Bits(n, 0);
    case K::Name: {
      Bits out(n, 0);
      if (auto it = i.concepts.find(c.concept_name()); it != i.concepts.end())
        for (Element d : it->second) out[d] = 1;
      return out;
    }
    case K::Not: {
      Bits out = eval(i, c.operand());
      for (auto& b : out) b = !b;
      return out;
    }
    case K::And:
    case K::Or: {
      Bits l = eval(i, c.left());
      Bits r = eval(i, c.right());
      for (int d = 0; d < n; ++d) l[d] = c.kind() == K::And ? (l[d] && r[d]) : (l[d] || r[d]);
      return l;
    }
    default:
      break;
  }
  Bits inner = eval(i, c.operand());
  auto succ = successors(i, c.role());
  Bits out(n, 0);
  for (int d = 0; d < n; ++d) {
    unsigned count = 0;
    bool all = true;
    for (Element e : succ[d]) {
      if (inner[e])
        ++count;
      else
        all = false;
    }
    switch (c.kind()) {
      case K::Exists: out[d] = count >= 1; break;
      case K::Forall: out[d] = all; break;
      case K::AtMost: out[d] = count <= c.number(); break;
      case K::AtLeast: out[d] = count >= c.number(); break;
      default: break;
    }
  }
  return out;
}

Element anchored(const Interpretation& i, const std::string& ind) {
  auto e = i.element_of(ind);
  if (!e) throw ContractError("individual '" + ind + "' is not anchored in the interpretation");
  return *e;
}

}  // namespace

std::set<Element> extension(const Interpretation& i, const Concept& c) {
  Bits b = eval(i, c);
  std::set<Element> out;
  for (int d = 0; d < i.size(); ++d)
    if (b[d]) out.insert(d);
  return out;
}

bool is_model(const Interpretation& i, const Ontology& o) {
  for (const auto& ci : o.inclusions) {
    Bits l = eval(i, ci.lhs);
    Bits r = eval(i, ci.rhs);
    for (int d = 0; d < i.size(); ++d)
      if (l[d] && !r[d]) return false;
  }
  return true;
}

bool is_model(const Interpretation& i, const ABox& a) {
  bool ok = true;
  for (const auto& c : a.concepts)
    if (!i.has_concept(c.concept_name, anchored(i, c.ind))) ok = false;
  for (const auto& r : a.roles)
    if (!i.has_role(r.role, anchored(i, r.from), anchored(i, r.to))) ok = false;
  return ok;
}

bool is_forest_shaped(const Interpretation& i, const std::set<Element>& individuals, Logic logic) {
  const int n = i.size();
  std::set<Edge> directed;
  std::set<Edge> undirected;
  for (const auto& [r, edges] : i.roles) {
    for (const auto& [x, y] : edges) {
      if (individuals.count(x) && individuals.count(y)) continue;
      if (x == y) return false;
      directed.insert({x, y});
      undirected.insert({std::min(x, y), std::max(x, y)});
    }
  }
  std::vector<int> parent(n);
  for (int d = 0; d < n; ++d) parent[d] = d;
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (const auto& [x, y] : undirected) {
    int a = find(x), b = find(y);
    if (a == b) return false;
    parent[a] = b;
  }
  std::vector<int> inds_in(n, 0);
  for (Element a : individuals)
    if (++inds_in[find(a)] > 1) return false;
  if (logic != Logic::ALCI) {
    std::vector<int> indeg(n, 0);
    for (const auto& [x, y] : directed) {
      if (directed.count({y, x})) return false;
      ++indeg[y];
    }
    for (int d = 0; d < n; ++d) {
      if (indeg[d] > 1) return false;
      if (indeg[d] > 0 && individuals.count(d)) return false;
    }
  }
  return true;
}

bool is_forest_model(const Interpretation& i, const ABox& a, Logic logic) {
  std::set<Element> inds;
  std::map<Element, std::string> name_of;
  for (const auto& ind : a.individuals()) {
    Element e = anchored(i, ind);
    if (!inds.insert(e).second) return false;
    name_of[e] = ind;
  }
  if (!is_model(i, a)) return false;
  for (const auto& [r, edges] : i.roles) {
    for (const auto& [x, y] : edges) {
      if (inds.count(x) && inds.count(y) && !a.has(RoleAssertion{r, name_of[x], name_of[y]})) return false;
    }
  }
  return is_forest_shaped(i, inds, logic);
}

TreeInterpretation unravel(const Interpretation& i, Element d, Logic logic, int depth) {
  std::vector<std::set<std::string>> labels(i.size());
  for (const auto& [a, ext] : i.concepts)
    for (Element e : ext) labels[e].insert(a);
  // Outgoing steps per element, in a fixed order.
  std::vector<std::vector<std::pair<Role, Element>>> steps(i.size());
  for (const auto& [r, edges] : i.roles) {
    for (const auto& [x, y] : edges) {
      steps[x].push_back({Role{r, false}, y});
      if (logic == Logic::ALCI) steps[y].push_back({Role{r, true}, x});
    }
  }
  for (auto& s : steps) std::sort(s.begin(), s.end());

  TreeInterpretation t;
  t.nodes[0].concepts = labels[d];
  std::vector<std::pair<int, Element>> frontier{{0, d}};
  for (int level = 0; level < depth && !frontier.empty(); ++level) {
    std::vector<std::pair<int, Element>> next;
    for (const auto& [node, e] : frontier) {
      for (const auto& [role, f] : steps[e]) {
        int child = t.add_child(node, {role}, labels[f]);
        next.push_back({child, f});
      }
    }
    frontier = std::move(next);
  }
  return t;
}

Interpretation build_iah(const Interpretation& i, const ABox& a, const Mapping& h, Logic logic, int depth) {
  if (!is_homomorphism(h, a, i)) throw ContractError("build_iah needs a homomorphism from the ABox");
  Interpretation out;
  out.depth.clear();
  auto inds = a.individuals();
  for (const auto& ind : inds) {
    out.add_individual(ind);
    out.depth.push_back(0);
  }
  for (const auto& ind : inds) {
    Element self = out.names.at(ind);
    TreeInterpretation t = unravel(i, h.of_individual(ind), logic, depth);
    std::vector<Element> id(t.size());
    id[0] = self;
    for (int v = 1; v < t.size(); ++v) {
      id[v] = out.add_element(ind + "." + t.word(v));
      out.depth.push_back(t.depth_of(v));
    }
    for (int v = 0; v < t.size(); ++v) {
      for (const auto& c : t.nodes[v].concepts) out.add_concept(c, id[v]);
      if (v > 0)
        for (const auto& r : t.nodes[v].edges) out.add_role(r, id[t.nodes[v].parent], id[v]);
    }
  }
  for (const auto& r : a.roles) out.add_role(r.role, out.names.at(r.from), out.names.at(r.to));
  return out;
}

bool evaluate_query(const Interpretation& i, const CQ& q) {
  for (const auto& ind : q.individuals()) anchored(i, ind);
  return has_homomorphism(q, i);
}

bool evaluate_query(const Interpretation& i, const UCQ& q) {
  for (const auto& d : q.disjuncts)
    for (const auto& ind : d.individuals()) anchored(i, ind);
  for (const auto& d : q.disjuncts)
    if (has_homomorphism(d, i)) return true;
  return false;
}

}  // namespace ontofit
