#include "ontofit/interpretation.hpp"

#include <algorithm>
#include <sstream>

namespace ontofit {

Element Interpretation::add_element(std::string label) {
  labels.push_back(std::move(label));
  return size() - 1;
}

Element Interpretation::add_individual(const std::string& name) {
  if (auto it = names.find(name); it != names.end()) return it->second;
  Element d = add_element(name);
  names[name] = d;
  return d;
}

void Interpretation::add_role(const Role& r, Element d, Element e) {
  if (r.inverted)
    roles[r.name].insert({e, d});
  else
    roles[r.name].insert({d, e});
}

bool Interpretation::has_concept(const std::string& a, Element d) const {
  auto it = concepts.find(a);
  return it != concepts.end() && it->second.count(d);
}

bool Interpretation::has_role(const std::string& r, Element d, Element e) const {
  auto it = roles.find(r);
  return it != roles.end() && it->second.count({d, e});
}

bool Interpretation::has_role(const Role& r, Element d, Element e) const {
  return r.inverted ? has_role(r.name, e, d) : has_role(r.name, d, e);
}

std::optional<Element> Interpretation::element_of(const std::string& individual) const {
  auto it = names.find(individual);
  if (it == names.end()) return std::nullopt;
  return it->second;
}

std::set<Element> Interpretation::neighbors(Element d) const {
  std::set<Element> out;
  for (const auto& [r, edges] : roles) {
    for (const auto& [x, y] : edges) {
      if (x == d && y != d) out.insert(y);
      if (y == d && x != d) out.insert(x);
    }
  }
  return out;
}

std::size_t Interpretation::degree() const {
  std::vector<std::set<Element>> nb(size());
  for (const auto& [r, edges] : roles) {
    for (const auto& [x, y] : edges) {
      if (x == y) continue;
      nb[x].insert(y);
      nb[y].insert(x);
    }
  }
  std::size_t m = 0;
  for (const auto& s : nb) m = std::max(m, s.size());
  return m;
}

Signature Interpretation::signature() const {
  Signature s;
  for (const auto& [a, ext] : concepts)
    if (!ext.empty()) s.concepts.insert(a);
  for (const auto& [r, ext] : roles)
    if (!ext.empty()) s.roles.insert(r);
  return s;
}

Interpretation Interpretation::restrict(const std::set<Element>& keep) const {
  Interpretation out;
  std::vector<Element> map(size(), -1);
  for (Element d : keep) {
    map[d] = out.size();
    out.labels.push_back(labels[d]);
    if (!depth.empty()) out.depth.push_back(depth[d]);
  }
  for (const auto& [a, ext] : concepts)
    for (Element d : ext)
      if (map[d] >= 0) out.concepts[a].insert(map[d]);
  for (const auto& [r, ext] : roles)
    for (const auto& [x, y] : ext)
      if (map[x] >= 0 && map[y] >= 0) out.roles[r].insert({map[x], map[y]});
  for (const auto& [n, d] : names)
    if (map[d] >= 0) out.names[n] = map[d];
  return out;
}

Interpretation from_abox(const ABox& a) {
  Interpretation out;
  for (const auto& ind : a.individuals()) out.add_individual(ind);
  for (const auto& c : a.concepts) out.add_concept(c.concept_name, out.names.at(c.ind));
  for (const auto& r : a.roles) out.add_role(r.role, out.names.at(r.from), out.names.at(r.to));
  return out;
}

Interpretation from_cq(const CQ& q) {
  Interpretation out;
  std::map<Term, Element> id;
  for (const auto& t : q.terms()) {
    if (t.var) {
      id[t] = out.add_element(t.name);
    } else {
      id[t] = out.add_individual(t.name);
    }
  }
  for (const auto& c : q.concept_atoms) out.add_concept(c.concept_name, id.at(c.t));
  for (const auto& r : q.role_atoms) out.add_role(r.role, id.at(r.from), id.at(r.to));
  return out;
}

Interpretation disjoint_union(const Interpretation& a, const Interpretation& b) {
  auto has_depth = [](const Interpretation& x) {
    return x.size() == 0 || x.depth.size() == static_cast<std::size_t>(x.size());
  };
  const bool depths = has_depth(a) && has_depth(b) && (!a.depth.empty() || !b.depth.empty());
  Interpretation out = a;
  const int shift = a.size();
  out.depth = depths ? a.depth : std::vector<int>{};
  for (int d = 0; d < b.size(); ++d) {
    out.labels.push_back(b.labels[d]);
    if (depths) out.depth.push_back(b.depth[d]);
  }
  for (const auto& [c, ext] : b.concepts)
    for (Element d : ext) out.concepts[c].insert(d + shift);
  for (const auto& [r, ext] : b.roles)
    for (const auto& [x, y] : ext) out.roles[r].insert({x + shift, y + shift});
  for (const auto& [n, d] : b.names) {
    if (out.names.count(n)) throw ContractError("disjoint union of interpretations sharing individual '" + n + "'");
    out.names[n] = d + shift;
  }
  return out;
}

TreeInterpretation::TreeInterpretation() { nodes.emplace_back(); }

int TreeInterpretation::add_child(int parent, std::set<Role> edges, std::set<std::string> concepts) {
  Node n;
  n.parent = parent;
  n.edges = std::move(edges);
  n.concepts = std::move(concepts);
  nodes.push_back(std::move(n));
  int id = size() - 1;
  nodes[parent].children.push_back(id);
  return id;
}

int TreeInterpretation::depth_of(int v) const {
  int d = 0;
  while (nodes[v].parent >= 0) {
    v = nodes[v].parent;
    ++d;
  }
  return d;
}

int TreeInterpretation::height() const {
  int h = 0;
  for (int v = 0; v < size(); ++v) h = std::max(h, depth_of(v));
  return h;
}

std::string TreeInterpretation::word(int v) const {
  std::vector<int> idx;
  while (nodes[v].parent >= 0) {
    const auto& sib = nodes[nodes[v].parent].children;
    idx.push_back(static_cast<int>(std::find(sib.begin(), sib.end(), v) - sib.begin()) + 1);
    v = nodes[v].parent;
  }
  std::string out;
  for (auto it = idx.rbegin(); it != idx.rend(); ++it) {
    if (!out.empty()) out += ".";
    out += std::to_string(*it);
  }
  return out;
}

Interpretation TreeInterpretation::to_interpretation() const {
  Interpretation out;
  out.depth.clear();
  for (int v = 0; v < size(); ++v) {
    std::string w = word(v);
    out.labels.push_back(w.empty() ? "e" : w);
    out.depth.push_back(depth_of(v));
  }
  for (int v = 0; v < size(); ++v) {
    for (const auto& c : nodes[v].concepts) out.add_concept(c, v);
    for (const auto& r : nodes[v].edges) out.add_role(r, nodes[v].parent, v);
  }
  return out;
}

std::string to_string(const Interpretation& i) {
  std::ostringstream out;
  out << "domain:";
  for (int d = 0; d < i.size(); ++d) out << " " << i.labels[d];
  out << "\n";
  for (const auto& [n, d] : i.names) out << "name " << n << " = " << i.labels[d] << "\n";
  for (const auto& [a, ext] : i.concepts) {
    if (ext.empty()) continue;
    out << a << ":";
    for (Element d : ext) out << " " << i.labels[d];
    out << "\n";
  }
  for (const auto& [r, ext] : i.roles) {
    if (ext.empty()) continue;
    out << r << ":";
    for (const auto& [x, y] : ext) out << " (" << i.labels[x] << "," << i.labels[y] << ")";
    out << "\n";
  }
  return out.str();
}

}  // namespace ontofit
