#ifndef ONTOFIT_MOSAIC_INTERNAL_HPP_
#define ONTOFIT_MOSAIC_INTERNAL_HPP_

#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "ontofit/fit_ucq.hpp"

namespace ontofit::detail {

// Concept names are bits of a label; role k occupies edge bits 2k
// (parent to child) and 2k+1 (child to parent).
struct Alphabet {
  std::vector<std::string> concepts;
  std::vector<std::string> roles;
  Logic logic = Logic::ALC;
  std::vector<uint32_t> labels;                             // by popcount
  std::vector<std::pair<uint32_t, uint32_t>> child_options;  // (label, edges)

  static Alphabet of(const Signature& s, Logic logic);
  uint32_t label_of(const std::set<std::string>& cs) const;
  std::set<std::string> concepts_of(uint32_t label) const;
  std::set<Role> roles_of(uint32_t edges) const;
  uint32_t edges_of(const std::set<Role>& rs) const;
};

struct PNode {
  int parent = -1;
  uint32_t label = 0;
  uint32_t edges = 0;
  int depth = 0;
  std::vector<int> kids;
};

// A forest in breadth-first order. The first names.size() nodes are the
// individuals; a mosaic has no names and root 0.
struct Piece {
  std::vector<PNode> nodes;
  std::vector<std::string> names;
  std::vector<std::tuple<int, int, int>> links;  // (role, from, to) between individuals

  int add(int parent, uint32_t label, uint32_t edges);
  void pop();
  int degree(int v) const;
  int height() const;
  Interpretation to_interp(const Alphabet& al) const;
};

// Canonical encoding of the subtree at v, cut below relative depth `cut`.
std::string subtree_key(const Piece& p, int v, int cut = 1 << 30);
std::string piece_key(const Piece& p);
// The subtree at v as a mosaic piece, cut below relative depth `cut`.
Piece extract(const Piece& p, int v, int cut = 1 << 30);
TreeInterpretation to_tree(const Piece& p, const Alphabet& al);
Piece from_tree(const TreeInterpretation& t, const Alphabet& al);

struct EnabledPositive {
  ABox component;
  std::vector<CQ> variations;
  int radius = 0;  // -1 when some variation floats
};

// Conditions of base candidates and mosaics for one negative example.
struct Checker {
  Alphabet alpha;
  Logic logic = Logic::ALC;
  int du = 1;
  int degree = 2;
  std::vector<ABox> avoid;
  std::vector<EnabledPositive> enabled;
  std::vector<CQ> neg_components;

  // Conditions 1 and 2; both are preserved when structure is removed.
  bool excluded(const Interpretation& i) const;
  // Condition 4 for homomorphisms with range inside `window` accepted by `select`
  // (which sees the positive and the deepest image).
  bool condition4(const Interpretation& i, std::pair<int, int> window,
                  const std::function<bool(const EnabledPositive&, int)>& select) const;
  bool is_mosaic(const Piece& m) const;
};

EnabledPositive make_enabled(const ABox& component, const UCQ& q, Logic logic);

// Search budget shared by one run.
struct Budget {
  long steps = 0;
  long max_steps = 0;
  bool exhausted = false;
  bool tick() {
    if (++steps > max_steps) exhausted = true;
    return !exhausted;
  }
};

// Chooses successor multisets, in breadth-first order, for every node with
// depth in [lo, hi] from index `start` on. `on_level(D)` runs when all levels
// up to D are complete, `prune` after each added successor, `done` at the
// end; a true result from `done` stops the search.
struct Expansion {
  const Checker* chk = nullptr;
  Budget* budget = nullptr;
  int lo = 0;
  int hi = 0;
  std::function<bool(Piece&, int)> on_level;
  std::function<bool(Piece&)> prune;
  std::function<bool(Piece&)> done;
  bool run(Piece& p, std::size_t start);
};

}  // namespace ontofit::detail

#endif  // ONTOFIT_MOSAIC_INTERNAL_HPP_
