#include "ontofit/hom.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace ontofit {

namespace {

struct Pattern {
  std::vector<Term> terms;
  std::vector<std::vector<std::string>> labels;
  struct Atom {
    std::string role;
    int from, to;
  };
  std::vector<Atom> atoms;
  bool names_strict = false;  // individual terms must map to their names
};

int index_of(const std::vector<Term>& terms, const Term& t) {
  return static_cast<int>(std::lower_bound(terms.begin(), terms.end(), t) - terms.begin());
}

Pattern pattern_of(const ABox& a) {
  Pattern p;
  for (const auto& ind : a.individuals()) p.terms.push_back(Term::individual(ind));
  p.labels.resize(p.terms.size());
  for (const auto& c : a.concepts) p.labels[index_of(p.terms, Term::individual(c.ind))].push_back(c.concept_name);
  for (const auto& r : a.roles)
    p.atoms.push_back({r.role, index_of(p.terms, Term::individual(r.from)), index_of(p.terms, Term::individual(r.to))});
  return p;
}

Pattern pattern_of(const CQ& q, bool weak) {
  Pattern p;
  auto ts = q.terms();
  p.terms.assign(ts.begin(), ts.end());
  p.labels.resize(p.terms.size());
  for (const auto& c : q.concept_atoms) p.labels[index_of(p.terms, c.t)].push_back(c.concept_name);
  for (const auto& r : q.role_atoms) p.atoms.push_back({r.role, index_of(p.terms, r.from), index_of(p.terms, r.to)});
  p.names_strict = !weak;
  return p;
}

class Search {
 public:
  Search(const Pattern& p, const Interpretation& t, const HomConstraints& c, Want want)
      : p_(p), t_(t), c_(c), want_(want) {}

  std::vector<Mapping> run() {
    const int n = static_cast<int>(p_.terms.size());
    const int m = t_.size();
    if (n == 0) return {Mapping{}};
    if (m == 0) return {};
    if (c_.depth_window && t_.depth.size() != static_cast<std::size_t>(m))
      throw ContractError("depth window requires a target with element depths");

    std::vector<char> reach;
    if (c_.reachability_anchors) {
      reach.assign(m, 0);
      for (Element a : *c_.reachability_anchors)
        for (Element e : reachable_set(t_, a, c_.reachability_logic)) reach[e] = 1;
    }

    // Adjacency per pattern atom role.
    for (const auto& atom : p_.atoms) {
      if (adj_.count(atom.role)) continue;
      auto& a = adj_[atom.role];
      a.out.resize(m);
      a.in.resize(m);
      if (auto it = t_.roles.find(atom.role); it != t_.roles.end()) {
        for (const auto& [x, y] : it->second) {
          a.out[x].push_back(y);
          a.in[y].push_back(x);
        }
      }
    }

    std::vector<std::vector<Element>> dom(n);
    for (int i = 0; i < n; ++i) {
      const Term& term = p_.terms[i];
      std::optional<Element> pin;
      if (auto it = c_.fixed.find(term); it != c_.fixed.end()) {
        pin = it->second;
      } else if (p_.names_strict && !term.var) {
        auto e = t_.element_of(term.name);
        if (!e) return {};
        pin = *e;
      }
      auto ok = [&](Element d) {
        for (const auto& a : p_.labels[i])
          if (!t_.has_concept(a, d)) return false;
        if (c_.depth_window && (t_.depth[d] < c_.depth_window->first || t_.depth[d] > c_.depth_window->second))
          return false;
        if (!pin && c_.reachability_anchors && !reach[d]) return false;
        for (const auto& atom : p_.atoms)
          if (atom.from == i && atom.to == i && !t_.has_role(atom.role, d, d)) return false;
        return true;
      };
      if (pin) {
        if (*pin < 0 || *pin >= m) return {};
        if (ok(*pin)) dom[i].push_back(*pin);
      } else {
        for (Element d = 0; d < m; ++d)
          if (ok(d)) dom[i].push_back(d);
      }
      if (dom[i].empty()) return {};
    }

    incident_.assign(n, {});
    for (std::size_t k = 0; k < p_.atoms.size(); ++k) {
      const auto& atom = p_.atoms[k];
      if (atom.from == atom.to) continue;
      incident_[atom.from].push_back(static_cast<int>(k));
      incident_[atom.to].push_back(static_cast<int>(k));
    }
    if (c_.locally_injective) {
      // Pairs r(a,b), r(a,c) with b != c must stay apart.
      apart_.assign(n, {});
      for (const auto& x : p_.atoms)
        for (const auto& y : p_.atoms)
          if (x.role == y.role && x.from == y.from && x.to != y.to) apart_[x.to].push_back(y.to);
    }

    assign_.assign(n, -1);
    solve(dom, n);
    std::sort(results_.begin(), results_.end());
    return results_;
  }

 private:
  struct Adj {
    std::vector<std::vector<Element>> out, in;
  };

  const Pattern& p_;
  const Interpretation& t_;
  const HomConstraints& c_;
  Want want_;
  std::map<std::string, Adj> adj_;
  std::vector<std::vector<int>> incident_;
  std::vector<std::vector<int>> apart_;
  std::vector<Element> assign_;
  std::vector<Mapping> results_;

  bool done() const { return want_ == Want::First && !results_.empty(); }

  void solve(std::vector<std::vector<Element>>& dom, int remaining) {
    if (done()) return;
    if (remaining == 0) {
      Mapping h;
      for (std::size_t i = 0; i < assign_.size(); ++i) h.assignment[p_.terms[i]] = assign_[i];
      results_.push_back(std::move(h));
      return;
    }
    int best = -1;
    for (std::size_t i = 0; i < dom.size(); ++i) {
      if (assign_[i] >= 0) continue;
      if (best < 0 || dom[i].size() < dom[best].size()) best = static_cast<int>(i);
    }
    const std::vector<Element> values = dom[best];
    for (Element v : values) {
      assign_[best] = v;
      std::vector<std::pair<int, std::vector<Element>>> saved;
      bool alive = true;
      for (int k : incident_[best]) {
        const auto& atom = p_.atoms[k];
        int other = atom.from == best ? atom.to : atom.from;
        if (assign_[other] >= 0) {
          // Both ends assigned: forward checking already covered it unless
          // other was pinned before propagation reached it.
          Element x = assign_[atom.from], y = assign_[atom.to];
          const auto& out = adj_.at(atom.role).out[x];
          if (std::find(out.begin(), out.end(), y) == out.end()) {
            alive = false;
            break;
          }
          continue;
        }
        const auto& a = adj_.at(atom.role);
        const auto& allowed = atom.from == best ? a.out[v] : a.in[v];
        std::vector<Element> next;
        for (Element d : dom[other])
          if (std::find(allowed.begin(), allowed.end(), d) != allowed.end()) next.push_back(d);
        saved.emplace_back(other, std::move(dom[other]));
        dom[other] = std::move(next);
        if (dom[other].empty()) {
          alive = false;
          break;
        }
      }
      if (alive && c_.locally_injective) {
        for (int other : apart_[best]) {
          if (assign_[other] >= 0) {
            if (assign_[other] == v) alive = false;
            continue;
          }
          auto it = std::find(dom[other].begin(), dom[other].end(), v);
          if (it == dom[other].end()) continue;
          std::vector<Element> next = dom[other];
          next.erase(next.begin() + (it - dom[other].begin()));
          saved.emplace_back(other, std::move(dom[other]));
          dom[other] = std::move(next);
          if (dom[other].empty()) alive = false;
          if (!alive) break;
        }
      }
      if (alive) solve(dom, remaining - 1);
      for (auto it = saved.rbegin(); it != saved.rend(); ++it) dom[it->first] = std::move(it->second);
      assign_[best] = -1;
      if (done()) return;
    }
  }
};

bool validate(const Mapping& h, const Pattern& p, const Interpretation& t, const HomConstraints& c) {
  if (h.assignment.size() != p.terms.size()) return false;
  std::vector<Element> img;
  for (const auto& term : p.terms) {
    auto it = h.assignment.find(term);
    if (it == h.assignment.end() || it->second < 0 || it->second >= t.size()) return false;
    img.push_back(it->second);
  }
  std::set<Element> reach;
  if (c.reachability_anchors)
    for (Element a : *c.reachability_anchors)
      for (Element e : reachable_set(t, a, c.reachability_logic)) reach.insert(e);
  for (std::size_t i = 0; i < p.terms.size(); ++i) {
    const Term& term = p.terms[i];
    Element d = img[i];
    auto fx = c.fixed.find(term);
    if (fx != c.fixed.end() && fx->second != d) return false;
    if (fx == c.fixed.end() && p.names_strict && !term.var) {
      auto e = t.element_of(term.name);
      if (!e || *e != d) return false;
    }
    for (const auto& a : p.labels[i])
      if (!t.has_concept(a, d)) return false;
    if (c.depth_window) {
      if (t.depth.size() != static_cast<std::size_t>(t.size())) return false;
      if (t.depth[d] < c.depth_window->first || t.depth[d] > c.depth_window->second) return false;
    }
    if (fx == c.fixed.end() && c.reachability_anchors && !reach.count(d)) return false;
  }
  for (const auto& atom : p.atoms)
    if (!t.has_role(atom.role, img[atom.from], img[atom.to])) return false;
  if (c.locally_injective) {
    for (const auto& x : p.atoms)
      for (const auto& y : p.atoms)
        if (x.role == y.role && x.from == y.from && x.to != y.to && img[x.to] == img[y.to]) return false;
  }
  return true;
}

}  // namespace

std::vector<Mapping> homomorphisms(const ABox& source, const Interpretation& target, const HomConstraints& c,
                                   Want want) {
  Pattern p = pattern_of(source);
  return Search(p, target, c, want).run();
}

std::vector<Mapping> homomorphisms(const CQ& source, const Interpretation& target, const HomConstraints& c,
                                   Want want) {
  Pattern p = pattern_of(source, c.weak);
  return Search(p, target, c, want).run();
}

std::vector<Mapping> homomorphisms(const ABox& source, const ABox& target, const HomConstraints& c, Want want) {
  return homomorphisms(source, from_abox(target), c, want);
}

std::vector<Mapping> homomorphisms(const CQ& source, const ABox& target, const HomConstraints& c, Want want) {
  return homomorphisms(source, from_abox(target), c, want);
}

std::optional<Mapping> find_homomorphism(const ABox& source, const Interpretation& target,
                                         const HomConstraints& c) {
  auto r = homomorphisms(source, target, c, Want::First);
  if (r.empty()) return std::nullopt;
  return r.front();
}

std::optional<Mapping> find_homomorphism(const CQ& source, const Interpretation& target, const HomConstraints& c) {
  auto r = homomorphisms(source, target, c, Want::First);
  if (r.empty()) return std::nullopt;
  return r.front();
}

bool has_homomorphism(const ABox& source, const Interpretation& target, const HomConstraints& c) {
  return find_homomorphism(source, target, c).has_value();
}

bool has_homomorphism(const CQ& source, const Interpretation& target, const HomConstraints& c) {
  return find_homomorphism(source, target, c).has_value();
}

bool is_homomorphism(const Mapping& h, const ABox& source, const Interpretation& target, const HomConstraints& c) {
  return validate(h, pattern_of(source), target, c);
}

bool is_homomorphism(const Mapping& h, const CQ& source, const Interpretation& target, const HomConstraints& c) {
  return validate(h, pattern_of(source, c.weak), target, c);
}

bool is_locally_injective(const Mapping& h, const ABox& source) {
  for (const auto& x : source.roles)
    for (const auto& y : source.roles)
      if (x.role == y.role && x.from == y.from && x.to != y.to &&
          h.of_individual(x.to) == h.of_individual(y.to))
        return false;
  return true;
}

std::set<Element> reachable_set(const Interpretation& i, Element d, Logic logic) {
  std::vector<std::vector<Element>> next(i.size());
  for (const auto& [r, edges] : i.roles) {
    for (const auto& [x, y] : edges) {
      next[x].push_back(y);
      if (logic == Logic::ALCI) next[y].push_back(x);
    }
  }
  std::set<Element> seen{d};
  std::deque<Element> todo{d};
  while (!todo.empty()) {
    Element x = todo.front();
    todo.pop_front();
    for (Element y : next[x])
      if (seen.insert(y).second) todo.push_back(y);
  }
  return seen;
}

std::string to_string(const Mapping& h, const Interpretation& target) {
  std::ostringstream out;
  bool first = true;
  for (const auto& [t, d] : h.assignment) {
    if (!first) out << ", ";
    first = false;
    out << t.name << "->" << (d >= 0 && d < target.size() ? target.labels[d] : "?");
  }
  return out.str();
}

}  // namespace ontofit
