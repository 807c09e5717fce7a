#ifndef ONTOFIT_INTERPRETATION_HPP_
#define ONTOFIT_INTERPRETATION_HPP_

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ontofit/syntax.hpp"

namespace ontofit {

using Element = int;
using Edge = std::pair<Element, Element>;

// A finite interpretation over elements 0..size()-1. `names` anchors
// individuals (standard names). `depth` is filled for forest-shaped
// structures and is empty otherwise.
struct Interpretation {
  std::vector<std::string> labels;  // display id per element
  std::map<std::string, std::set<Element>> concepts;
  std::map<std::string, std::set<Edge>> roles;
  std::map<std::string, Element> names;
  std::vector<int> depth;

  int size() const { return static_cast<int>(labels.size()); }
  Element add_element(std::string label);
  Element add_individual(const std::string& name);
  void add_concept(const std::string& a, Element d) { concepts[a].insert(d); }
  void add_role(const std::string& r, Element d, Element e) { roles[r].insert({d, e}); }
  void add_role(const Role& r, Element d, Element e);
  bool has_concept(const std::string& a, Element d) const;
  bool has_role(const std::string& r, Element d, Element e) const;
  bool has_role(const Role& r, Element d, Element e) const;
  std::optional<Element> element_of(const std::string& individual) const;
  // Elements linked to d by any role in either direction, excluding d.
  std::set<Element> neighbors(Element d) const;
  std::size_t degree() const;
  Signature signature() const;
  // Restriction to `keep`, renumbered in increasing order.
  Interpretation restrict(const std::set<Element>& keep) const;

  bool operator==(const Interpretation&) const = default;
};

Interpretation from_abox(const ABox& a);
Interpretation from_cq(const CQ& q);

// Disjoint union; elements of `b` are shifted by a.size(). Names must be disjoint.
Interpretation disjoint_union(const Interpretation& a, const Interpretation& b);

// Rooted tree over words of naturals: node 0 is the root, children of a node
// carry indices 1..k in order. The edges of a non-root node link it to its
// parent: Role r (not inverted) means (parent, node) in r, inverted means
// (node, parent) in r; an empty set means no role link.
struct TreeInterpretation {
  struct Node {
    int parent = -1;
    std::set<Role> edges;
    std::set<std::string> concepts;
    std::vector<int> children;
  };
  std::vector<Node> nodes;

  TreeInterpretation();
  int add_child(int parent, std::set<Role> edges, std::set<std::string> concepts = {});
  int size() const { return static_cast<int>(nodes.size()); }
  int depth_of(int v) const;
  int height() const;
  std::string word(int v) const;  // "" for the root, else "1.2.1"
  Interpretation to_interpretation() const;
};

std::string to_string(const Interpretation& i);

}  // namespace ontofit

#endif  // ONTOFIT_INTERPRETATION_HPP_
