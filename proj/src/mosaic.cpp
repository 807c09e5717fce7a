#include <algorithm>
#include <bit>
#include <map>
#include <queue>
#include <sstream>

#include "mosaic_internal.hpp"
#include "ontofit/hom.hpp"
#include "ontofit/preprocess.hpp"
#include "ontofit/variations.hpp"

namespace ontofit::detail {

Alphabet Alphabet::of(const Signature& s, Logic logic) {
  Alphabet a;
  a.concepts.assign(s.concepts.begin(), s.concepts.end());
  a.roles.assign(s.roles.begin(), s.roles.end());
  a.logic = logic;
  if (a.concepts.size() > 16 || a.roles.size() > 4) throw ContractError("signature too large for the mosaic search");
  for (uint32_t l = 0; l < (1u << a.concepts.size()); ++l) a.labels.push_back(l);
  std::stable_sort(a.labels.begin(), a.labels.end(),
                   [](uint32_t x, uint32_t y) { return std::popcount(x) < std::popcount(y); });
  std::vector<uint32_t> edges;
  const uint32_t all = (1u << (2 * a.roles.size())) - 1;
  for (uint32_t e = 1; e <= all; ++e) {
    bool ok = true;
    if (logic != Logic::ALCI)
      for (std::size_t k = 0; k < a.roles.size(); ++k)
        if (e & (1u << (2 * k + 1))) ok = false;
    if (ok) edges.push_back(e);
  }
  std::stable_sort(edges.begin(), edges.end(),
                   [](uint32_t x, uint32_t y) { return std::popcount(x) < std::popcount(y); });
  if (a.labels.size() * edges.size() > (1u << 16)) throw ContractError("signature too large for the mosaic search");
  for (uint32_t l : a.labels)
    for (uint32_t e : edges) a.child_options.push_back({l, e});
  return a;
}

uint32_t Alphabet::label_of(const std::set<std::string>& cs) const {
  uint32_t l = 0;
  for (std::size_t k = 0; k < concepts.size(); ++k)
    if (cs.count(concepts[k])) l |= 1u << k;
  return l;
}

std::set<std::string> Alphabet::concepts_of(uint32_t label) const {
  std::set<std::string> out;
  for (std::size_t k = 0; k < concepts.size(); ++k)
    if (label & (1u << k)) out.insert(concepts[k]);
  return out;
}

std::set<Role> Alphabet::roles_of(uint32_t edges) const {
  std::set<Role> out;
  for (std::size_t k = 0; k < roles.size(); ++k) {
    if (edges & (1u << (2 * k))) out.insert(Role{roles[k], false});
    if (edges & (1u << (2 * k + 1))) out.insert(Role{roles[k], true});
  }
  return out;
}

uint32_t Alphabet::edges_of(const std::set<Role>& rs) const {
  uint32_t e = 0;
  for (const auto& r : rs) {
    auto it = std::find(roles.begin(), roles.end(), r.name);
    if (it == roles.end()) throw ContractError("role " + r.name + " outside the alphabet");
    e |= 1u << (2 * (it - roles.begin()) + (r.inverted ? 1 : 0));
  }
  return e;
}

int Piece::add(int parent, uint32_t label, uint32_t edges) {
  PNode n;
  n.parent = parent;
  n.label = label;
  n.edges = edges;
  n.depth = parent < 0 ? 0 : nodes[parent].depth + 1;
  nodes.push_back(n);
  const int id = static_cast<int>(nodes.size()) - 1;
  if (parent >= 0) nodes[parent].kids.push_back(id);
  return id;
}

void Piece::pop() {
  const int id = static_cast<int>(nodes.size()) - 1;
  if (nodes[id].parent >= 0) nodes[nodes[id].parent].kids.pop_back();
  nodes.pop_back();
}

int Piece::degree(int v) const {
  std::set<int> nb;
  if (nodes[v].parent >= 0) nb.insert(nodes[v].parent);
  for (int k : nodes[v].kids) nb.insert(k);
  for (const auto& [r, f, t] : links) {
    if (f == v && t != v) nb.insert(t);
    if (t == v && f != v) nb.insert(f);
  }
  return static_cast<int>(nb.size());
}

int Piece::height() const {
  int h = 0;
  for (const auto& n : nodes) h = std::max(h, n.depth);
  return h;
}

Interpretation Piece::to_interp(const Alphabet& al) const {
  Interpretation out;
  out.depth.clear();
  for (std::size_t v = 0; v < nodes.size(); ++v) {
    if (v < names.size())
      out.add_individual(names[v]);
    else
      out.add_element("n" + std::to_string(v));
    out.depth.push_back(nodes[v].depth);
  }
  for (std::size_t v = 0; v < nodes.size(); ++v) {
    const auto& n = nodes[v];
    for (std::size_t k = 0; k < al.concepts.size(); ++k)
      if (n.label & (1u << k)) out.add_concept(al.concepts[k], static_cast<Element>(v));
    for (std::size_t k = 0; k < al.roles.size(); ++k) {
      if (n.edges & (1u << (2 * k))) out.add_role(al.roles[k], n.parent, static_cast<Element>(v));
      if (n.edges & (1u << (2 * k + 1))) out.add_role(al.roles[k], static_cast<Element>(v), n.parent);
    }
  }
  for (const auto& [r, f, t] : links) out.add_role(al.roles[r], f, t);
  return out;
}

namespace {

std::string key_at(const Piece& p, int v, int depth, int cut) {
  const auto& n = p.nodes[v];
  std::string s = std::to_string(n.label) + "/" + std::to_string(n.edges);
  if (depth >= cut || n.kids.empty()) return s;
  std::vector<std::string> ks;
  for (int k : n.kids) ks.push_back(key_at(p, k, depth + 1, cut));
  std::sort(ks.begin(), ks.end());
  s += "[";
  for (const auto& k : ks) s += k + ",";
  return s + "]";
}

}  // namespace

std::string subtree_key(const Piece& p, int v, int cut) {
  // The root's edges belong to its former parent and are not part of the key.
  const auto& n = p.nodes[v];
  std::string s = std::to_string(n.label);
  if (cut <= 0 || n.kids.empty()) return s;
  std::vector<std::string> ks;
  for (int k : n.kids) ks.push_back(key_at(p, k, 1, cut));
  std::sort(ks.begin(), ks.end());
  s += "[";
  for (const auto& k : ks) s += k + ",";
  return s + "]";
}

std::string piece_key(const Piece& p) {
  std::string s;
  for (std::size_t v = 0; v < p.names.size(); ++v) s += p.names[v] + ":" + subtree_key(p, static_cast<int>(v)) + ";";
  if (p.names.empty()) s = subtree_key(p, 0);
  return s;
}

Piece extract(const Piece& p, int v, int cut) {
  Piece out;
  out.add(-1, p.nodes[v].label, 0);
  std::queue<std::pair<int, int>> todo;  // (source node, copy)
  todo.push({v, 0});
  while (!todo.empty()) {
    auto [s, c] = todo.front();
    todo.pop();
    if (out.nodes[c].depth >= cut) continue;
    for (int k : p.nodes[s].kids) todo.push({k, out.add(c, p.nodes[k].label, p.nodes[k].edges)});
  }
  return out;
}

TreeInterpretation to_tree(const Piece& p, const Alphabet& al) {
  TreeInterpretation t;
  t.nodes[0].concepts = al.concepts_of(p.nodes[0].label);
  std::vector<int> id(p.nodes.size(), 0);
  for (std::size_t v = 1; v < p.nodes.size(); ++v)
    id[v] = t.add_child(id[p.nodes[v].parent], al.roles_of(p.nodes[v].edges), al.concepts_of(p.nodes[v].label));
  return t;
}

Piece from_tree(const TreeInterpretation& t, const Alphabet& al) {
  Piece out;
  out.add(-1, al.label_of(t.nodes[0].concepts), 0);
  std::queue<std::pair<int, int>> todo;
  todo.push({0, 0});
  while (!todo.empty()) {
    auto [s, c] = todo.front();
    todo.pop();
    for (int k : t.nodes[s].children)
      todo.push({k, out.add(c, al.label_of(t.nodes[k].concepts), al.edges_of(t.nodes[k].edges))});
  }
  return out;
}

EnabledPositive make_enabled(const ABox& component, const UCQ& q, Logic logic) {
  EnabledPositive ep;
  ep.component = component;
  for (const auto& p : q.disjuncts)
    for (auto& pv : enumerate_proper_variations(p, component, logic)) {
      // Variables of a component touching an individual lie within its size of it.
      for (const auto& comp : components(pv)) {
        if (comp.vars.empty()) continue;
        if (comp.individuals().empty())
          ep.radius = -1;
        else if (ep.radius >= 0)
          ep.radius = std::max(ep.radius, static_cast<int>(comp.vars.size()));
      }
      ep.variations.push_back(std::move(pv));
    }
  return ep;
}

bool Checker::excluded(const Interpretation& i) const {
  for (const auto& q : neg_components)
    if (has_homomorphism(q, i)) return true;
  for (const auto& a : avoid)
    if (has_homomorphism(a, i)) return true;
  return false;
}

bool Checker::condition4(const Interpretation& i, std::pair<int, int> window,
                         const std::function<bool(const EnabledPositive&, int)>& select) const {
  for (const auto& ep : enabled) {
    HomConstraints c;
    c.depth_window = window;
    for (const auto& h : homomorphisms(ep.component, i, c)) {
      int deepest = 0;
      for (const auto& [t, d] : h.assignment) deepest = std::max(deepest, i.depth[d]);
      if (select && !select(ep, deepest)) continue;
      if (!has_compatible_variation(ep.variations, ep.component, h, i, logic)) return false;
    }
  }
  return true;
}

bool Checker::is_mosaic(const Piece& m) const {
  if (m.height() > 3 * du) return false;
  for (std::size_t v = 0; v < m.nodes.size(); ++v)
    if (m.degree(static_cast<int>(v)) > degree) return false;
  const Interpretation i = m.to_interp(alpha);
  return !excluded(i) && condition4(i, {du, 2 * du}, nullptr);
}

bool Expansion::run(Piece& p, std::size_t i) {
  if (!budget->tick()) return false;
  while (i < p.nodes.size() && (p.nodes[i].depth < lo || p.nodes[i].depth > hi)) ++i;
  if (i == p.nodes.size()) return done(p);
  const int depth = p.nodes[i].depth;
  if (on_level && (i == 0 || p.nodes[i - 1].depth < depth) && !on_level(p, depth)) return false;
  const int room = std::max(0, chk->degree - p.degree(static_cast<int>(i)));
  const auto& options = chk->alpha.child_options;
  const int parent = static_cast<int>(i);
  std::function<bool(int, std::size_t)> pick = [&](int left, std::size_t from) -> bool {
    if (left == 0) return run(p, i + 1);
    for (std::size_t o = from; o < options.size(); ++o) {
      if (budget->exhausted) return false;
      p.add(parent, options[o].first, options[o].second);
      const bool ok = (!prune || prune(p)) && pick(left - 1, o);
      p.pop();
      if (ok) return true;
    }
    return false;
  };
  for (int size = 0; size <= room; ++size)
    if (pick(size, 0)) return true;
  return false;
}

}  // namespace ontofit::detail

namespace ontofit {

using detail::Alphabet;
using detail::Piece;

namespace {

std::string tree_key(const TreeInterpretation& t, int v, int depth, int cut, bool with_edges) {
  const auto& n = t.nodes[v];
  std::string s = "{";
  for (const auto& c : n.concepts) s += c + ",";
  s += "|";
  if (with_edges)
    for (const auto& r : n.edges) s += r.to_string() + ",";
  if (depth < cut && !n.children.empty()) {
    std::vector<std::string> ks;
    for (int k : n.children) ks.push_back(tree_key(t, k, depth + 1, cut, true));
    std::sort(ks.begin(), ks.end());
    s += "[";
    for (const auto& k : ks) s += k;
    s += "]";
  }
  return s + "}";
}

// Key of the mosaic without its deepest layer.
std::string trimmed_key(const Mosaic& m, int du) { return tree_key(m.tree, 0, 0, 3 * du - 1, false); }

TreeInterpretation base_subtree(const BaseCandidate& b, Element d) {
  TreeInterpretation t;
  for (const auto& [c, ext] : b.interp.concepts)
    if (ext.count(d)) t.nodes[0].concepts.insert(c);
  std::queue<std::pair<Element, int>> todo;
  todo.push({d, 0});
  while (!todo.empty()) {
    auto [x, tx] = todo.front();
    todo.pop();
    for (Element y = 0; y < b.interp.size(); ++y) {
      if (b.parent[y] != x) continue;
      std::set<Role> edges;
      std::set<std::string> labels;
      for (const auto& [r, ext] : b.interp.roles) {
        if (ext.count({x, y})) edges.insert(Role{r, false});
        if (ext.count({y, x})) edges.insert(Role{r, true});
      }
      for (const auto& [c, ext] : b.interp.concepts)
        if (ext.count(y)) labels.insert(c);
      todo.push({y, t.add_child(tx, edges, labels)});
    }
  }
  return t;
}

}  // namespace

unsigned long long degree_bound(const ExampleCollection& e, std::string* diagnostic, unsigned long long ceiling) {
  unsigned long long total = 0;
  bool saturated = false;
  auto add = [&](unsigned long long x) {
    if (x >= ceiling || total >= ceiling - x) {
      total = ceiling;
      saturated = true;
    } else {
      total += x;
    }
  };
  for (const auto& n : e.negatives) add(n.size());
  for (const auto& p : e.positives) {
    const unsigned long long base = p.size() + 1;
    const std::size_t exp = p.query ? p.query->size() : 0;
    unsigned long long pw = 1;
    for (std::size_t k = 0; k < exp && pw < ceiling; ++k) pw = pw > ceiling / base ? ceiling : pw * base;
    add(pw);
  }
  if (saturated && diagnostic) *diagnostic = "degree bound saturated at " + std::to_string(ceiling);
  return total;
}

int required_depth_unit(const ExampleCollection& e) {
  int need = 1;
  for (const auto& p : e.positives) {
    for (const auto& comp : components(p.abox))
      need = std::max(need, static_cast<int>(comp.individuals().size()) - 1);
    if (p.query)
      for (const auto& d : p.query->disjuncts) need = std::max(need, static_cast<int>(d.vars.size()));
  }
  for (const auto& n : e.negatives)
    if (n.query)
      for (const auto& d : n.query->disjuncts)
        for (const auto& comp : components(d))
          need = std::max(need, (static_cast<int>(comp.terms().size()) + 1) / 3);
  return need;
}

Bounds default_bounds(const ExampleCollection& e) {
  Bounds b;
  const int size = static_cast<int>(std::max<std::size_t>(e.size(), 1));
  b.depth_unit = std::min(size, std::max(2, required_depth_unit(e)));
  int max_deg = 0;
  for (const auto& n : e.negatives) {
    const Interpretation i = from_abox(n.abox);
    for (Element d = 0; d < i.size(); ++d) max_deg = std::max(max_deg, static_cast<int>(i.neighbors(d).size()));
  }
  const unsigned long long db = degree_bound(e);
  b.degree = static_cast<int>(std::min<unsigned long long>(db, static_cast<unsigned long long>(std::max(2, max_deg + 1))));
  b.degree = std::max(b.degree, 1);
  return b;
}

bool is_full_bounds(const ExampleCollection& e, const Bounds& b) {
  return static_cast<std::size_t>(b.depth_unit) >= e.size() &&
         static_cast<unsigned long long>(b.degree) >= degree_bound(e);
}

bool is_enabled(const Example& positive, const AvoidSet& avoid) {
  for (const auto& comp : components(positive.abox))
    if (std::find(avoid.aboxes.begin(), avoid.aboxes.end(), comp) != avoid.aboxes.end()) return false;
  return true;
}

bool check_condition_b_local(const Interpretation& piece, const ABox& component, const UCQ& q,
                             std::pair<int, int> window, Logic logic) {
  const auto ep = detail::make_enabled(component, q, logic);
  HomConstraints c;
  c.depth_window = window;
  for (const auto& h : homomorphisms(component, piece, c))
    if (!has_compatible_variation(ep.variations, component, h, piece, logic)) return false;
  return true;
}

bool check_condition_b_local(const TreeInterpretation& piece, const ABox& component, const UCQ& q,
                             std::pair<int, int> window, Logic logic) {
  return check_condition_b_local(piece.to_interpretation(), component, q, window, logic);
}

bool glues_to(const Mosaic& m, int d, const TreeInterpretation& host, int depth_unit) {
  if (d < 0 || d >= host.size()) throw ContractError("glues_to: node outside the host");
  return tree_key(host, d, 0, 1 << 30, false) == trimmed_key(m, depth_unit);
}

bool glues_to(const Mosaic& m, Element d, const BaseCandidate& host, int depth_unit) {
  if (d < 0 || d >= host.interp.size()) throw ContractError("glues_to: element outside the base");
  return tree_key(base_subtree(host, d), 0, 0, 1 << 30, false) == trimmed_key(m, depth_unit);
}

std::vector<Mosaic> eliminate_mosaics(const std::vector<Mosaic>& s0, int depth_unit, EliminationOrder order) {
  const int cut = 3 * depth_unit - 1;
  // Per mosaic: trimmed key and the keys of its root successors.
  std::vector<std::string> own;
  std::vector<std::vector<std::string>> need;
  for (const auto& m : s0) {
    own.push_back(trimmed_key(m, depth_unit));
    std::vector<std::string> ks;
    for (int c : m.tree.nodes[0].children) {
      // The subtree at c, with c as root and its own edges dropped.
      TreeInterpretation sub;
      sub.nodes[0].concepts = m.tree.nodes[c].concepts;
      std::queue<std::pair<int, int>> todo;
      todo.push({c, 0});
      while (!todo.empty()) {
        auto [x, tx] = todo.front();
        todo.pop();
        for (int y : m.tree.nodes[x].children)
          todo.push({y, sub.add_child(tx, m.tree.nodes[y].edges, m.tree.nodes[y].concepts)});
      }
      ks.push_back(tree_key(sub, 0, 0, cut, false));
    }
    need.push_back(std::move(ks));
  }
  std::vector<bool> alive(s0.size(), true);
  auto supported = [&](std::size_t i, const std::multiset<std::string>& pool) {
    for (const auto& k : need[i])
      if (!pool.count(k)) return false;
    return true;
  };
  if (order == EliminationOrder::Generational) {
    for (bool changed = true; changed;) {
      changed = false;
      std::multiset<std::string> pool;
      for (std::size_t i = 0; i < s0.size(); ++i)
        if (alive[i]) pool.insert(own[i]);
      std::vector<bool> next = alive;
      for (std::size_t i = 0; i < s0.size(); ++i)
        if (alive[i] && !supported(i, pool)) {
          next[i] = false;
          changed = true;
        }
      alive = std::move(next);
    }
  } else {
    std::multiset<std::string> pool(own.begin(), own.end());
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t j = s0.size(); j-- > 0;)
        if (alive[j] && !supported(j, pool)) {
          alive[j] = false;
          pool.erase(pool.find(own[j]));
          changed = true;
        }
    }
  }
  std::vector<Mosaic> out;
  for (std::size_t i = 0; i < s0.size(); ++i)
    if (alive[i]) out.push_back(s0[i]);
  return out;
}

std::string RegularWitness::dump() const {
  std::ostringstream out;
  out << "depth-unit " << depth_unit << "\n";
  out << "base\n";
  for (Element d = 0; d < base.interp.size(); ++d) {
    out << "  " << base.interp.labels[d] << " owner=" << base.owner[d] << " depth=" << base.interp.depth[d];
    if (base.parent[d] >= 0) out << " parent=" << base.interp.labels[base.parent[d]];
    out << " :";
    for (const auto& [c, ext] : base.interp.concepts)
      if (ext.count(d)) out << " " << c;
    out << "\n";
  }
  for (const auto& [r, ext] : base.interp.roles)
    for (const auto& [x, y] : ext) out << "  " << r << "(" << base.interp.labels[x] << "," << base.interp.labels[y] << ")\n";
  for (std::size_t k = 0; k < mosaics.size(); ++k) {
    const auto& t = mosaics[k].tree;
    out << "mosaic " << k << " owner=" << mosaics[k].owner << "\n";
    for (int v = 0; v < t.size(); ++v) {
      out << "  " << (v == 0 ? std::string("e") : t.word(v)) << " [";
      bool first = true;
      for (const auto& r : t.nodes[v].edges) {
        out << (first ? "" : ",") << r.to_string();
        first = false;
      }
      out << "] :";
      for (const auto& c : t.nodes[v].concepts) out << " " << c;
      out << "\n";
    }
  }
  out << "assignment\n";
  for (const auto& [d, k] : base_assignment) out << "  " << base.interp.labels[d] << " -> " << k << "\n";
  for (std::size_t k = 0; k < mosaic_assignment.size(); ++k)
    for (const auto& [c, m] : mosaic_assignment[k]) out << "  " << k << ":" << mosaics[k].tree.word(c) << " -> " << m << "\n";
  return out.str();
}

Interpretation assemble(const RegularWitness& w, int depth) {
  Interpretation out;
  out.depth.clear();
  std::vector<Element> map(w.base.interp.size(), -1);
  for (Element d = 0; d < w.base.interp.size(); ++d) {
    if (w.base.interp.depth[d] > std::min(depth, 1)) continue;
    const std::string& l = w.base.interp.labels[d];
    map[d] = w.base.parent[d] < 0 ? out.add_individual(l) : out.add_element(l);
    out.depth.push_back(w.base.interp.depth[d]);
  }
  for (const auto& [c, ext] : w.base.interp.concepts)
    for (Element d : ext)
      if (map[d] >= 0) out.add_concept(c, map[d]);
  for (const auto& [r, ext] : w.base.interp.roles)
    for (const auto& [x, y] : ext)
      if (map[x] >= 0 && map[y] >= 0) out.add_role(r, map[x], map[y]);
  std::function<void(int, Element)> grow = [&](int m, Element x) {
    const auto& t = w.mosaics[m].tree;
    if (out.depth[x] >= depth) return;
    for (int c : t.nodes[0].children) {
      const Element y = out.add_element(out.labels[x] + "." + t.word(c));
      out.depth.push_back(out.depth[x] + 1);
      for (const auto& a : t.nodes[c].concepts) out.add_concept(a, y);
      for (const auto& r : t.nodes[c].edges) out.add_role(r, x, y);
      grow(w.mosaic_assignment[m].at(c), y);
    }
  };
  for (const auto& [d, m] : w.base_assignment)
    if (map[d] >= 0) grow(m, map[d]);
  return out;
}

}  // namespace ontofit
