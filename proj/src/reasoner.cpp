#include "ontofit/reasoner.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <tuple>

namespace ontofit {

namespace {

struct Expr {
  enum Kind { True, False, Atom, Not, And, Or } kind;
  int a = -1;
  int b = -1;
};

struct AtomInfo {
  bool modal = false;
  std::string name;
  unsigned n = 0;
  Role role;
  int filler = -1;  // expression id
};

using Bits = std::vector<std::uint64_t>;

bool intersects(const Bits& x, const Bits& y) {
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] & y[i]) return true;
  return false;
}

bool test(const Bits& x, int i) { return (x[i >> 6] >> (i & 63)) & 1; }
void set(Bits& x, int i) { x[i >> 6] |= std::uint64_t{1} << (i & 63); }

constexpr std::size_t kMaxTypes = 1u << 21;

class Reasoner {
 public:
  explicit Reasoner(const KnowledgeBase& kb) : kb_(kb) {
    for (const auto& ci : kb.ontology.inclusions)
      constraints_.push_back(mk(Expr::Or, mk(Expr::Not, compile(ci.lhs)), compile(ci.rhs)));
    for (const auto& [ind, c] : kb.assertions) assertion_exprs_.push_back({ind, compile(c)});
    counting_ = false;
    for (const auto& a : atoms_)
      if (a.modal && a.n > 1) counting_ = true;
    if (counting_)
      for (const auto& a : atoms_)
        if (a.modal && a.role.inverted)
          throw ContractError("number restrictions together with inverse roles are not supported");
    enumerate_types();
    index_types();
    eliminate();
  }

  bool counting() const { return counting_; }

  // Type per individual, or nothing if the individuals cannot be typed.
  std::optional<std::vector<int>> solve_individuals() {
    setup_individuals();
    for (const auto& d : dom_)
      if (d.empty()) return std::nullopt;
    if (!counting_ && !arc_consistency()) return std::nullopt;
    assign_.assign(inds_.size(), -1);
    if (!backtrack(0)) return std::nullopt;
    return assign_;
  }

  Interpretation materialize(const std::vector<int>& types, int unfold_depth, int max_size) {
    if (counting_) throw ContractError("models are not materialized with number restrictions");
    Interpretation out;
    std::vector<int> type_of;
    std::vector<std::vector<std::pair<Role, Element>>> adj;
    auto add = [&](const std::string& label, int t) {
      if (out.size() >= max_size) throw ContractError("countermodel exceeds the size limit");
      Element e = out.add_element(label);
      type_of.push_back(t);
      adj.emplace_back();
      for (std::size_t i = 0; i < atoms_.size(); ++i)
        if (!atoms_[i].modal && types_[t][i]) out.add_concept(atoms_[i].name, e);
      return e;
    };
    auto link = [&](const Role& r, Element d, Element e) {
      out.add_role(r, d, e);
      adj[d].push_back({r, e});
      adj[e].push_back({r.inverse(), d});
    };
    for (std::size_t i = 0; i < inds_.size(); ++i) {
      Element e = add(inds_[i], types[i]);
      out.names[inds_[i]] = e;
    }
    for (const auto& c : kb_.abox.concepts) out.add_concept(c.concept_name, out.names.at(c.ind));
    for (const auto& r : kb_.abox.roles) link(Role{r.role, false}, out.names.at(r.from), out.names.at(r.to));

    std::map<int, Element> shared;
    std::deque<std::pair<Element, int>> todo;  // element, depth (-1 once shared)
    for (std::size_t i = 0; i < inds_.size(); ++i) todo.push_back({static_cast<Element>(i), 0});
    while (!todo.empty()) {
      auto [e, depth] = todo.front();
      todo.pop_front();
      const int t = type_of[e];
      for (const auto& [role, reqs] : positive_) {
        for (const auto& [f, atom] : reqs) {
          if (!types_[t][atom]) continue;
          bool met = false;
          for (const auto& [r, g] : adj[e])
            if (r == role && test(true_f_[type_of[g]], f) && compatible(t, role, type_of[g])) met = true;
          if (met) continue;
          int w = witness(t, role, f);
          if (w < 0) throw ContractError("internal: unsatisfied requirement while building a model");
          Element g;
          if (depth >= 0 && depth < unfold_depth) {
            g = add("_" + std::to_string(out.size()), w);
            todo.push_back({g, depth + 1});
          } else if (auto it = shared.find(w); it != shared.end()) {
            g = it->second;
          } else {
            g = add("_t" + std::to_string(w), w);
            shared[w] = g;
            todo.push_back({g, -1});
          }
          link(role, e, g);
        }
      }
    }
    return out;
  }

 private:
  const KnowledgeBase& kb_;
  std::vector<Expr> exprs_;
  std::map<std::tuple<int, int, int>, int> hashcons_;
  std::vector<AtomInfo> atoms_;
  std::map<std::string, int> name_atom_;
  std::map<std::tuple<unsigned, Role, int>, int> modal_atom_;
  std::vector<int> constraints_;
  std::vector<std::pair<std::string, int>> assertion_exprs_;
  bool counting_ = false;

  std::vector<std::vector<char>> types_;
  std::vector<int> filler_exprs_;
  std::map<int, int> filler_index_;
  std::vector<Bits> true_f_;
  // Per role: (filler index, atom) of existential atoms.
  std::map<Role, std::vector<std::pair<int, int>>> positive_;
  std::map<Role, std::vector<Bits>> neg_;
  std::vector<char> alive_;

  std::vector<std::string> inds_;
  std::map<std::string, int> ind_index_;
  std::vector<std::vector<std::pair<int, Role>>> nbrs_;
  std::vector<std::vector<int>> dom_;
  std::vector<int> assign_;
  std::vector<std::vector<std::pair<Role, int>>> needs_;  // per type, unmet by anonymous survivors

  int mk(Expr::Kind k, int a = -1, int b = -1) {
    if (k == Expr::Not && exprs_[a].kind == Expr::Not) return exprs_[a].a;
    auto key = std::make_tuple(static_cast<int>(k), a, b);
    if (auto it = hashcons_.find(key); it != hashcons_.end()) return it->second;
    exprs_.push_back({k, a, b});
    int id = static_cast<int>(exprs_.size()) - 1;
    hashcons_[key] = id;
    return id;
  }

  int atom_expr(int atom) { return mk(Expr::Atom, atom); }

  int modal(unsigned n, const Role& r, int filler) {
    auto key = std::make_tuple(n, r, filler);
    auto it = modal_atom_.find(key);
    if (it == modal_atom_.end()) {
      AtomInfo a;
      a.modal = true;
      a.n = n;
      a.role = r;
      a.filler = filler;
      atoms_.push_back(a);
      it = modal_atom_.emplace(key, static_cast<int>(atoms_.size()) - 1).first;
    }
    return atom_expr(it->second);
  }

  int compile(const Concept& c) {
    using K = Concept::Kind;
    switch (c.kind()) {
      case K::Top: return mk(Expr::True);
      case K::Bottom: return mk(Expr::False);
      case K::Name: {
        auto it = name_atom_.find(c.concept_name());
        if (it == name_atom_.end()) {
          AtomInfo a;
          a.name = c.concept_name();
          atoms_.push_back(a);
          it = name_atom_.emplace(c.concept_name(), static_cast<int>(atoms_.size()) - 1).first;
        }
        return atom_expr(it->second);
      }
      case K::Not: return mk(Expr::Not, compile(c.operand()));
      case K::And: return mk(Expr::And, compile(c.left()), compile(c.right()));
      case K::Or: return mk(Expr::Or, compile(c.left()), compile(c.right()));
      case K::Exists: return modal(1, c.role(), compile(c.operand()));
      case K::Forall: return mk(Expr::Not, modal(1, c.role(), mk(Expr::Not, compile(c.operand()))));
      case K::AtLeast:
        if (c.number() == 0) return mk(Expr::True);
        return modal(c.number(), c.role(), compile(c.operand()));
      case K::AtMost: return mk(Expr::Not, modal(c.number() + 1, c.role(), compile(c.operand())));
    }
    return mk(Expr::True);
  }

  // 1 true, 0 false, -1 unknown.
  int eval(int e, const std::vector<char>& v) const {
    const Expr& x = exprs_[e];
    switch (x.kind) {
      case Expr::True: return 1;
      case Expr::False: return 0;
      case Expr::Atom: return v[x.a];
      case Expr::Not: {
        int r = eval(x.a, v);
        return r < 0 ? -1 : !r;
      }
      case Expr::And: {
        int l = eval(x.a, v);
        if (l == 0) return 0;
        int r = eval(x.b, v);
        if (r == 0) return 0;
        return (l == 1 && r == 1) ? 1 : -1;
      }
      case Expr::Or: {
        int l = eval(x.a, v);
        if (l == 1) return 1;
        int r = eval(x.b, v);
        if (r == 1) return 1;
        return (l == 0 && r == 0) ? 0 : -1;
      }
    }
    return -1;
  }

  void collect_atoms(int e, std::set<int>& out) const {
    const Expr& x = exprs_[e];
    if (x.kind == Expr::Atom) out.insert(x.a);
    if (x.kind == Expr::Not || x.kind == Expr::And || x.kind == Expr::Or) collect_atoms(x.a, out);
    if (x.kind == Expr::And || x.kind == Expr::Or) collect_atoms(x.b, out);
  }

  void enumerate_types() {
    const int n = static_cast<int>(atoms_.size());
    // Atoms constrained by the TBox first, in order of appearance.
    std::vector<int> order;
    std::vector<char> placed(n, 0);
    std::vector<std::vector<int>> watch(n);
    for (std::size_t c = 0; c < constraints_.size(); ++c) {
      std::set<int> as;
      collect_atoms(constraints_[c], as);
      for (int a : as) {
        watch[a].push_back(static_cast<int>(c));
        if (!placed[a]) {
          placed[a] = 1;
          order.push_back(a);
        }
      }
    }
    for (int a = 0; a < n; ++a)
      if (!placed[a]) order.push_back(a);

    for (int c : constraints_) {
      std::set<int> as;
      collect_atoms(c, as);
      if (as.empty() && eval(c, std::vector<char>(n, -1)) == 0) return;
    }
    std::vector<char> v(n, -1);
    dpll(order, watch, 0, v);
  }

  void dpll(const std::vector<int>& order, const std::vector<std::vector<int>>& watch, std::size_t pos,
            std::vector<char>& v) {
    if (pos == order.size()) {
      if (types_.size() >= kMaxTypes) throw ContractError("type space too large for the reasoner");
      types_.push_back(v);
      return;
    }
    const int a = order[pos];
    for (char val : {0, 1}) {
      v[a] = val;
      bool ok = true;
      for (int c : watch[a])
        if (eval(constraints_[c], v) == 0) {
          ok = false;
          break;
        }
      if (ok) dpll(order, watch, pos + 1, v);
    }
    v[a] = -1;
  }

  void index_types() {
    for (const auto& a : atoms_) {
      if (!a.modal || filler_index_.count(a.filler)) continue;
      filler_index_[a.filler] = static_cast<int>(filler_exprs_.size());
      filler_exprs_.push_back(a.filler);
    }
    const std::size_t words = (filler_exprs_.size() + 63) / 64 + 1;
    std::set<Role> roles;
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
      const auto& a = atoms_[i];
      if (!a.modal) continue;
      roles.insert(a.role);
      roles.insert(a.role.inverse());
      if (a.n == 1) positive_[a.role].push_back({filler_index_.at(a.filler), static_cast<int>(i)});
    }
    for (const auto& r : roles) {
      positive_[r];
      neg_[r].assign(types_.size(), Bits(words, 0));
    }
    true_f_.assign(types_.size(), Bits(words, 0));
    for (std::size_t t = 0; t < types_.size(); ++t) {
      for (std::size_t f = 0; f < filler_exprs_.size(); ++f)
        if (eval(filler_exprs_[f], types_[t]) == 1) set(true_f_[t], static_cast<int>(f));
      for (std::size_t i = 0; i < atoms_.size(); ++i) {
        const auto& a = atoms_[i];
        if (a.modal && a.n == 1 && !types_[t][i]) set(neg_[a.role][t], filler_index_.at(a.filler));
      }
    }
  }

  bool compatible(int t, const Role& r, int u) const {
    if (counting_) return true;
    auto it = neg_.find(r);
    if (it != neg_.end() && intersects(it->second[t], true_f_[u])) return false;
    auto jt = neg_.find(r.inverse());
    if (jt != neg_.end() && intersects(jt->second[u], true_f_[t])) return false;
    return true;
  }

  int witness(int t, const Role& r, int f) const {
    for (std::size_t u = 0; u < types_.size(); ++u)
      if (alive_[u] && test(true_f_[u], f) && compatible(t, r, static_cast<int>(u))) return static_cast<int>(u);
    return -1;
  }

  // Bounds on successor counts along role r for a node of type t.
  struct Bound {
    int filler;
    int lo;
    int hi;  // -1: unbounded
  };

  std::map<Role, std::vector<Bound>> count_bounds(int t) const {
    std::map<Role, std::vector<Bound>> out;
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
      const auto& a = atoms_[i];
      if (!a.modal) continue;
      int f = filler_index_.at(a.filler);
      if (types_[t][i])
        out[a.role].push_back({f, static_cast<int>(a.n), -1});
      else
        out[a.role].push_back({f, 0, static_cast<int>(a.n) - 1});
    }
    return out;
  }

  // Is there a multiset of alive types which, added to `base`, meets `bounds`?
  bool multiset_exists(const std::vector<Bound>& bounds, std::vector<int> base) const {
    int need = 0;
    for (std::size_t k = 0; k < bounds.size(); ++k) {
      if (bounds[k].hi >= 0 && base[k] > bounds[k].hi) return false;
      need += std::max(0, bounds[k].lo - base[k]);
    }
    if (need == 0) return true;
    std::set<std::vector<char>> profiles;
    for (std::size_t u = 0; u < types_.size(); ++u) {
      if (!alive_[u]) continue;
      std::vector<char> p;
      for (const auto& b : bounds) p.push_back(test(true_f_[u], b.filler));
      profiles.insert(p);
    }
    std::vector<std::vector<char>> ps(profiles.begin(), profiles.end());
    return pick_profiles(bounds, ps, 0, base, need);
  }

  bool pick_profiles(const std::vector<Bound>& bounds, const std::vector<std::vector<char>>& ps, std::size_t i,
                     std::vector<int>& counts, int budget) const {
    bool met = true;
    for (std::size_t k = 0; k < bounds.size(); ++k)
      if (counts[k] < bounds[k].lo) met = false;
    if (met) return true;
    if (i == ps.size() || budget == 0) return false;
    for (int c = 0; c <= budget; ++c) {
      bool ok = true;
      for (std::size_t k = 0; k < bounds.size(); ++k) {
        counts[k] += c * ps[i][k];
        if (bounds[k].hi >= 0 && counts[k] > bounds[k].hi) ok = false;
      }
      bool found = ok && pick_profiles(bounds, ps, i + 1, counts, budget - c);
      for (std::size_t k = 0; k < bounds.size(); ++k) counts[k] -= c * ps[i][k];
      if (found) return true;
      if (!ok) break;
    }
    return false;
  }

  bool anonymous_ok(int t) const {
    if (counting_) {
      for (const auto& [role, bounds] : count_bounds(t))
        if (!multiset_exists(bounds, std::vector<int>(bounds.size(), 0))) return false;
      return true;
    }
    for (const auto& [role, reqs] : positive_)
      for (const auto& [f, atom] : reqs)
        if (types_[t][atom] && witness(t, role, f) < 0) return false;
    return true;
  }

  void eliminate() {
    alive_.assign(types_.size(), 1);
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t t = 0; t < types_.size(); ++t) {
        if (alive_[t] && !anonymous_ok(static_cast<int>(t))) {
          alive_[t] = 0;
          changed = true;
        }
      }
    }
  }

  bool satisfies_assertions(int t, int ind) const {
    const std::string& name = inds_[ind];
    for (const auto& c : kb_.abox.concepts) {
      if (c.ind != name) continue;
      auto it = name_atom_.find(c.concept_name);
      if (it != name_atom_.end() && !types_[t][it->second]) return false;
    }
    for (const auto& [i, e] : assertion_exprs_)
      if (i == name && eval(e, types_[t]) != 1) return false;
    return true;
  }

  void setup_individuals() {
    std::set<std::string> names = kb_.abox.individuals();
    for (const auto& [i, c] : kb_.assertions) names.insert(i);
    inds_.assign(names.begin(), names.end());
    for (std::size_t i = 0; i < inds_.size(); ++i) ind_index_[inds_[i]] = static_cast<int>(i);
    nbrs_.assign(inds_.size(), {});
    for (const auto& r : kb_.abox.roles) {
      int a = ind_index_.at(r.from), b = ind_index_.at(r.to);
      nbrs_[a].push_back({b, Role{r.role, false}});
      nbrs_[b].push_back({a, Role{r.role, true}});
    }
    needs_.assign(types_.size(), {});
    if (!counting_) {
      for (std::size_t t = 0; t < types_.size(); ++t)
        for (const auto& [role, reqs] : positive_)
          for (const auto& [f, atom] : reqs)
            if (types_[t][atom] && witness(static_cast<int>(t), role, f) < 0) needs_[t].push_back({role, f});
    }
    dom_.assign(inds_.size(), {});
    for (std::size_t i = 0; i < inds_.size(); ++i)
      for (std::size_t t = 0; t < types_.size(); ++t)
        if (satisfies_assertions(static_cast<int>(t), static_cast<int>(i))) dom_[i].push_back(static_cast<int>(t));
  }

  bool supported(int a, int t) const {
    for (const auto& [b, r] : nbrs_[a]) {
      bool any = false;
      for (int u : dom_[b])
        if (compatible(t, r, u)) {
          any = true;
          break;
        }
      if (!any) return false;
    }
    for (const auto& [role, f] : needs_[t]) {
      bool any = false;
      for (const auto& [b, r] : nbrs_[a]) {
        if (!(r == role)) continue;
        for (int u : dom_[b])
          if (test(true_f_[u], f) && compatible(t, r, u)) {
            any = true;
            break;
          }
        if (any) break;
      }
      if (!any) return false;
    }
    return true;
  }

  bool arc_consistency() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t a = 0; a < inds_.size(); ++a) {
        std::vector<int> keep;
        for (int t : dom_[a])
          if (supported(static_cast<int>(a), t)) keep.push_back(t);
        if (keep.size() != dom_[a].size()) {
          changed = true;
          dom_[a] = std::move(keep);
          if (dom_[a].empty()) return false;
        }
      }
    }
    return true;
  }

  bool complete_around(int a) const {
    if (assign_[a] < 0) return false;
    for (const auto& [b, r] : nbrs_[a])
      if (assign_[b] < 0) return false;
    return true;
  }

  bool local_ok(int a) const {
    const int t = assign_[a];
    if (counting_) {
      auto bounds = count_bounds(t);
      for (const auto& [role, bs] : bounds) {
        std::vector<int> base(bs.size(), 0);
        for (const auto& [b, r] : nbrs_[a]) {
          if (!(r == role)) continue;
          for (std::size_t k = 0; k < bs.size(); ++k) base[k] += test(true_f_[assign_[b]], bs[k].filler);
        }
        if (!multiset_exists(bs, base)) return false;
      }
      return true;
    }
    for (const auto& [role, f] : needs_[t]) {
      bool any = false;
      for (const auto& [b, r] : nbrs_[a])
        if (r == role && test(true_f_[assign_[b]], f)) any = true;
      if (!any) return false;
    }
    return true;
  }

  bool backtrack(std::size_t assigned) {
    if (assigned == inds_.size()) return true;
    int best = -1;
    for (std::size_t a = 0; a < inds_.size(); ++a)
      if (assign_[a] < 0 && (best < 0 || dom_[a].size() < dom_[best].size())) best = static_cast<int>(a);
    for (int t : dom_[best]) {
      assign_[best] = t;
      bool ok = true;
      for (const auto& [b, r] : nbrs_[best])
        if (assign_[b] >= 0 && !compatible(t, r, assign_[b])) ok = false;
      if (ok && complete_around(best) && !local_ok(best)) ok = false;
      if (ok)
        for (const auto& [b, r] : nbrs_[best])
          if (complete_around(b) && !local_ok(b)) ok = false;
      if (ok && backtrack(assigned + 1)) return true;
      assign_[best] = -1;
    }
    return false;
  }
};

}  // namespace

bool is_consistent(const KnowledgeBase& kb) {
  Reasoner r(kb);
  return r.solve_individuals().has_value();
}

std::optional<Interpretation> build_model(const KnowledgeBase& kb, int unfold_depth, int max_size) {
  Reasoner r(kb);
  auto types = r.solve_individuals();
  if (!types) return std::nullopt;
  return r.materialize(*types, unfold_depth, max_size);
}

}  // namespace ontofit
