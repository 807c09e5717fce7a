#include "ontofit/fit_ucq.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "mosaic_internal.hpp"
#include "ontofit/hom.hpp"
#include "ontofit/preprocess.hpp"
#include "ontofit/witness.hpp"

namespace ontofit {

using detail::Alphabet;
using detail::Budget;
using detail::Checker;
using detail::EnabledPositive;
using detail::Expansion;
using detail::Piece;

namespace {

void require_ucq(const ExampleCollection& e) {
  if (e.mode != Mode::UCQ) throw ContractError("the mosaic procedure needs ucq mode, got " + to_string(e.mode));
  if (e.logic == Logic::ALCQ) throw ContractError("ucq fitting supports ALC and ALCI only");
}

// The negative ABox with its individuals as roots, labelled by its assertions.
Piece initial_piece(const ABox& a, const Alphabet& al) {
  Piece p;
  const auto inds = a.individuals();
  p.names.assign(inds.begin(), inds.end());
  for (const auto& n : p.names) {
    std::set<std::string> cs;
    for (const auto& c : a.concepts)
      if (c.ind == n) cs.insert(c.concept_name);
    p.add(-1, al.label_of(cs), 0);
  }
  auto index = [&](const std::string& n) {
    return static_cast<int>(std::find(p.names.begin(), p.names.end(), n) - p.names.begin());
  };
  for (const auto& r : a.roles) {
    const int k = static_cast<int>(std::find(al.roles.begin(), al.roles.end(), r.role) - al.roles.begin());
    p.links.emplace_back(k, index(r.from), index(r.to));
  }
  return p;
}

// Level-by-level search for forest models of the negative ABox meeting the
// base conditions; `accept` sees each complete candidate and stops the
// search by returning true.
bool search_base(const Checker& chk, const ABox& a, Budget& budget, const std::function<bool(Piece&)>& accept) {
  Piece p = initial_piece(a, chk.alpha);
  const int du = chk.du;
  for (std::size_t v = 0; v < p.nodes.size(); ++v)
    if (p.degree(static_cast<int>(v)) > chk.degree) return false;
  Expansion ex;
  ex.chk = &chk;
  ex.budget = &budget;
  ex.lo = 0;
  ex.hi = 3 * du - 1;
  ex.prune = [&](Piece& q) { return !chk.excluded(q.to_interp(chk.alpha)); };
  ex.on_level = [&](Piece& q, int level) {
    return chk.condition4(q.to_interp(chk.alpha), {0, 2 * du}, [&](const EnabledPositive& ep, int deepest) {
      return ep.radius >= 0 && deepest + ep.radius == level;
    });
  };
  ex.done = [&](Piece& q) { return chk.condition4(q.to_interp(chk.alpha), {0, 2 * du}, nullptr) && accept(q); };
  // Individual labels extend the asserted ones.
  std::function<bool(std::size_t)> label = [&](std::size_t v) -> bool {
    if (v == p.names.size()) return ex.run(p, 0);
    const uint32_t base = p.nodes[v].label;
    for (uint32_t l : chk.alpha.labels) {
      if ((l & base) != base) continue;
      if (!budget.tick()) return false;
      p.nodes[v].label = l;
      if (!chk.excluded(p.to_interp(chk.alpha)) && label(v + 1)) return true;
    }
    p.nodes[v].label = base;
    return false;
  };
  return label(0);
}

// Coinductive search for mosaics: a mosaic is proven once every root
// successor has a proven (or currently assumed) mosaic gluing to it.
struct Prover {
  enum class State { Failed, InProgress, Proven };
  const Checker& chk;
  Budget& budget;
  long max_mosaics;
  std::map<std::string, State> memo;
  std::map<std::string, Piece> store;
  std::map<std::string, std::vector<std::string>> choice;
  std::vector<std::string> log;

  // Key of a proven mosaic whose upper part is `upper`.
  std::optional<std::string> find(const Piece& upper) {
    Piece work = upper;
    std::optional<std::string> found;
    Expansion ex;
    ex.chk = &chk;
    ex.budget = &budget;
    ex.lo = ex.hi = 3 * chk.du - 1;
    ex.prune = [&](Piece& q) { return !chk.excluded(q.to_interp(chk.alpha)); };
    ex.done = [&](Piece& m) {
      const std::string k = detail::piece_key(m);
      if (auto it = memo.find(k); it != memo.end()) {
        if (it->second == State::Failed) return false;
        found = k;
        return true;
      }
      if (static_cast<long>(memo.size()) >= max_mosaics) {
        budget.exhausted = true;
        return false;
      }
      if (!chk.is_mosaic(m)) {
        memo[k] = State::Failed;
        return false;
      }
      store[k] = m;
      if (!prove(k)) return false;
      found = k;
      return true;
    };
    ex.run(work, 0);
    return found;
  }

  bool prove(const std::string& k) {
    memo[k] = State::InProgress;
    const std::size_t snapshot = log.size();
    const Piece m = store.at(k);
    std::vector<std::string> picks;
    for (int c : m.nodes[0].kids) {
      auto f = find(detail::extract(m, c));
      if (!f) {
        memo[k] = State::Failed;
        for (std::size_t i = snapshot; i < log.size(); ++i) memo.erase(log[i]);
        log.resize(snapshot);
        return false;
      }
      picks.push_back(*f);
    }
    memo[k] = State::Proven;
    choice[k] = std::move(picks);
    log.push_back(k);
    return true;
  }
};

struct NegativeResult {
  Piece base;
  std::vector<std::pair<int, std::string>> roots;  // depth-1 node -> mosaic key
  std::map<std::string, Piece> store;
  std::map<std::string, std::vector<std::string>> choice;
};

std::vector<std::vector<CQ>> negative_choices(const Example& n) {
  std::vector<std::vector<CQ>> options;
  for (const auto& d : n.query->disjuncts) options.push_back(components(d));
  std::vector<std::vector<CQ>> out;
  std::vector<std::size_t> pick(options.size(), 0);
  for (const auto& o : options)
    if (o.empty()) return {std::vector<CQ>{}};
  while (true) {
    std::vector<CQ> c;
    for (std::size_t i = 0; i < options.size(); ++i) c.push_back(options[i][pick[i]]);
    out.push_back(std::move(c));
    std::size_t i = 0;
    while (i < pick.size() && ++pick[i] == options[i].size()) pick[i++] = 0;
    if (i == pick.size()) break;
  }
  return out;
}

Checker make_checker(const Alphabet& al, Logic logic, const Bounds& b, const AvoidSet& avoid,
                     std::vector<EnabledPositive> enabled, std::vector<CQ> neg) {
  Checker c;
  c.alpha = al;
  c.logic = logic;
  c.du = b.depth_unit;
  c.degree = b.degree;
  c.avoid = avoid.aboxes;
  c.enabled = std::move(enabled);
  c.neg_components = std::move(neg);
  return c;
}

std::vector<EnabledPositive> enabled_for(const ExampleCollection& e, const ChoiceFns& ch, const AvoidSet& avoid) {
  if (ch.pos_component.size() != e.positives.size() || ch.neg_component.size() != e.negatives.size())
    throw ContractError("choice functions do not match the collection");
  std::vector<EnabledPositive> out;
  for (std::size_t i = 0; i < e.positives.size(); ++i)
    if (is_enabled(e.positives[i], avoid))
      out.push_back(detail::make_enabled(ch.pos_component[i], *e.positives[i].query, e.logic));
  return out;
}

void check_bounds(const Bounds& b) {
  if (b.depth_unit < 1 || b.degree < 1) throw ContractError("bounds need depth_unit >= 1 and degree >= 1");
}

// Words under the successor numbering: individuals keep their names.
BaseCandidate to_base(const std::vector<Piece>& parts, const Alphabet& al) {
  BaseCandidate b;
  b.interp.depth.clear();
  for (std::size_t k = 0; k < parts.size(); ++k) {
    const Piece& p = parts[k];
    const Element offset = b.interp.size();
    for (std::size_t v = 0; v < p.nodes.size(); ++v) {
      const auto& n = p.nodes[v];
      if (v < p.names.size()) {
        b.interp.add_individual(p.names[v]);
      } else {
        const auto& sib = p.nodes[n.parent].kids;
        const int idx = static_cast<int>(std::find(sib.begin(), sib.end(), static_cast<int>(v)) - sib.begin()) + 1;
        b.interp.add_element(b.interp.labels[offset + n.parent] + "." + std::to_string(idx));
      }
      b.interp.depth.push_back(n.depth);
      b.owner.push_back(static_cast<int>(k));
      b.parent.push_back(n.parent < 0 ? -1 : offset + n.parent);
    }
    const Interpretation i = p.to_interp(al);
    for (const auto& [c, ext] : i.concepts)
      for (Element d : ext) b.interp.add_concept(c, offset + d);
    for (const auto& [r, ext] : i.roles)
      for (const auto& [x, y] : ext) b.interp.add_role(r, offset + x, offset + y);
  }
  return b;
}

}  // namespace

void enumerate_base_candidates(const ExampleCollection& e, const ChoiceFns& ch, const AvoidSet& avoid,
                               const Bounds& b, const std::function<bool(const BaseCandidate&)>& visit) {
  require_ucq(e);
  check_bounds(b);
  if (e.negatives.empty()) throw ContractError("base candidates need a negative example");
  const Alphabet al = Alphabet::of(signature_of(e), e.logic);
  const auto enabled = enabled_for(e, ch, avoid);
  std::vector<std::vector<Piece>> per;
  for (std::size_t n = 0; n < e.negatives.size(); ++n) {
    const Checker chk = make_checker(al, e.logic, b, avoid, enabled, ch.neg_component[n]);
    Budget budget{0, b.max_steps};
    std::set<std::string> seen;
    std::vector<Piece> found;
    search_base(chk, e.negatives[n].abox, budget, [&](Piece& p) {
      if (seen.insert(detail::piece_key(p)).second) found.push_back(p);
      return static_cast<long>(found.size()) >= b.max_mosaics;
    });
    if (found.empty()) return;
    per.push_back(std::move(found));
  }
  std::vector<std::size_t> pick(per.size(), 0);
  while (true) {
    std::vector<Piece> parts;
    for (std::size_t k = 0; k < per.size(); ++k) parts.push_back(per[k][pick[k]]);
    if (!visit(to_base(parts, al))) return;
    std::size_t i = 0;
    while (i < pick.size() && ++pick[i] == per[i].size()) pick[i++] = 0;
    if (i == pick.size()) return;
  }
}

std::vector<Mosaic> enumerate_mosaics(const ExampleCollection& e, const ChoiceFns& ch, const AvoidSet& avoid,
                                      int negative, const Bounds& b) {
  require_ucq(e);
  check_bounds(b);
  if (negative < 0 || negative >= static_cast<int>(e.negatives.size()))
    throw ContractError("enumerate_mosaics: no such negative example");
  const Alphabet al = Alphabet::of(signature_of(e), e.logic);
  const Checker chk = make_checker(al, e.logic, b, avoid, enabled_for(e, ch, avoid), ch.neg_component[negative]);
  Budget budget{0, b.max_steps};
  std::set<std::string> seen;
  std::vector<Mosaic> out;
  for (uint32_t l : al.labels) {
    Piece p;
    p.add(-1, l, 0);
    if (chk.excluded(p.to_interp(al))) continue;
    Expansion ex;
    ex.chk = &chk;
    ex.budget = &budget;
    ex.lo = 0;
    ex.hi = 3 * b.depth_unit - 1;
    ex.prune = [&](Piece& q) { return !chk.excluded(q.to_interp(al)); };
    ex.done = [&](Piece& m) {
      if (chk.is_mosaic(m) && seen.insert(detail::piece_key(m)).second) {
        out.push_back(Mosaic{detail::to_tree(m, al), negative});
        if (static_cast<long>(out.size()) > b.max_mosaics)
          throw ContractError("more than " + std::to_string(b.max_mosaics) + " mosaics");
      }
      return false;
    };
    ex.run(p, 0);
    if (budget.exhausted) throw ContractError("mosaic enumeration exceeded the step budget");
  }
  return out;
}

FitVerdict decide_ucq_fitting(const ExampleCollection& e, const Bounds& b) {
  require_ucq(e);
  check_bounds(b);
  FitVerdict v;
  if (e.negatives.empty()) {
    v.outcome = Outcome::FittingExists;
    v.ontology = bottom_ontology(e.logic);
    v.diagnostics.push_back("no negative examples: the inconsistent ontology fits");
    return v;
  }
  const Logic logic = e.logic;
  if (b.finite_witness_size > 0) {
    if (auto fw = search_finite_witness(e, logic, b)) {
      v.outcome = Outcome::FittingExists;
      v.ontology = synthesize_vd_ontology(*fw, e, logic);
      v.finite_witness = fw->j;
      v.diagnostics.push_back("finite witness with " + std::to_string(fw->j.size()) + " elements");
      return v;
    }
    v.diagnostics.push_back("no finite witness with parts of size " + std::to_string(b.finite_witness_size));
  }
  Alphabet al;
  try {
    al = Alphabet::of(signature_of(e), logic);
  } catch (const ContractError& err) {
    v.outcome = Outcome::Unknown;
    v.diagnostics.push_back(err.what());
    return v;
  }

  // Avoidable components: those already mapping into a negative ABox can
  // never be avoided.
  std::vector<ABox> avoidable;
  for (const auto& p : e.positives)
    for (const auto& comp : components(p.abox)) {
      bool maps = false;
      for (const auto& n : e.negatives)
        if (!homomorphisms(comp, n.abox, {}, Want::First).empty()) maps = true;
      if (!maps && std::find(avoidable.begin(), avoidable.end(), comp) == avoidable.end()) avoidable.push_back(comp);
    }
  std::map<std::pair<std::size_t, std::size_t>, EnabledPositive> enabled_cache;
  Budget budget{0, b.max_steps};

  auto try_choice = [&](const AvoidSet& avoid, const ChoiceFns& ch,
                        const std::vector<std::size_t>& comp_index) -> std::optional<RegularWitness> {
    std::vector<EnabledPositive> enabled;
    for (std::size_t i = 0; i < e.positives.size(); ++i) {
      if (!is_enabled(e.positives[i], avoid)) continue;
      auto key = std::make_pair(i, comp_index[i]);
      auto it = enabled_cache.find(key);
      if (it == enabled_cache.end())
        it = enabled_cache.emplace(key, detail::make_enabled(ch.pos_component[i], *e.positives[i].query, logic)).first;
      enabled.push_back(it->second);
    }
    std::vector<NegativeResult> results;
    ChoiceFns used = ch;
    for (std::size_t n = 0; n < e.negatives.size(); ++n) {
      bool ok = false;
      for (const auto& neg : negative_choices(e.negatives[n])) {
        const Checker chk = make_checker(al, logic, b, avoid, enabled, neg);
        Prover prover{chk, budget, b.max_mosaics, {}, {}, {}, {}};
        NegativeResult r;
        ok = search_base(chk, e.negatives[n].abox, budget, [&](Piece& p) {
          std::vector<std::pair<int, std::string>> roots;
          for (std::size_t d = 0; d < p.nodes.size(); ++d) {
            if (p.nodes[d].depth != 1) continue;
            auto f = prover.find(detail::extract(p, static_cast<int>(d)));
            if (!f) return false;
            roots.push_back({static_cast<int>(d), *f});
          }
          r.base = p;
          r.roots = std::move(roots);
          return true;
        });
        if (ok) {
          r.store = std::move(prover.store);
          r.choice = std::move(prover.choice);
          results.push_back(std::move(r));
          used.neg_component[n] = neg;
          break;
        }
        if (budget.exhausted) return std::nullopt;
      }
      if (!ok) return std::nullopt;
    }
    RegularWitness w;
    w.ch = used;
    w.avoid = avoid;
    w.depth_unit = b.depth_unit;
    std::vector<Piece> parts;
    for (const auto& r : results) parts.push_back(r.base);
    w.base = to_base(parts, al);
    Element offset = 0;
    for (std::size_t n = 0; n < results.size(); ++n) {
      const auto& r = results[n];
      std::map<std::string, int> ids;
      std::function<int(const std::string&)> place = [&](const std::string& k) {
        if (auto it = ids.find(k); it != ids.end()) return it->second;
        const int id = static_cast<int>(w.mosaics.size());
        ids[k] = id;
        const Piece& m = r.store.at(k);
        w.mosaics.push_back(Mosaic{detail::to_tree(m, al), static_cast<int>(n)});
        w.mosaic_assignment.emplace_back();
        const auto& picks = r.choice.at(k);
        for (std::size_t j = 0; j < picks.size(); ++j) {
          const int target = place(picks[j]);
          w.mosaic_assignment[id][m.nodes[0].kids[j]] = target;
        }
        return id;
      };
      for (const auto& [d, k] : r.roots) w.base_assignment[offset + d] = place(k);
      offset += static_cast<Element>(r.base.nodes.size());
    }
    return w;
  };

  const std::size_t k = avoidable.size();
  std::vector<std::size_t> subset;
  std::function<bool(std::size_t, std::size_t)> over_subsets;
  std::optional<RegularWitness> found;

  auto over_choices = [&](const AvoidSet& avoid) {
    ChoiceFns ch;
    ch.pos_component.resize(e.positives.size());
    ch.neg_component.resize(e.negatives.size());
    std::vector<std::vector<ABox>> comps;
    for (const auto& p : e.positives) comps.push_back(components(p.abox));
    std::vector<std::size_t> pick(e.positives.size(), 0);
    while (true) {
      if (!budget.tick()) return false;
      std::vector<std::size_t> index(e.positives.size(), 0);
      for (std::size_t i = 0; i < e.positives.size(); ++i) {
        const bool en = is_enabled(e.positives[i], avoid);
        index[i] = en ? pick[i] : 0;
        ch.pos_component[i] = comps[i][index[i]];
      }
      if ((found = try_choice(avoid, ch, index))) return true;
      if (budget.exhausted) return false;
      std::size_t i = 0;
      while (i < pick.size()) {
        if (!is_enabled(e.positives[i], avoid) || ++pick[i] == comps[i].size()) {
          pick[i++] = 0;
          continue;
        }
        break;
      }
      if (i == pick.size()) return false;
    }
  };

  over_subsets = [&](std::size_t start, std::size_t left) -> bool {
    if (left == 0) {
      AvoidSet avoid;
      for (std::size_t i : subset) avoid.aboxes.push_back(avoidable[i]);
      return over_choices(avoid);
    }
    for (std::size_t i = start; i + left <= k; ++i) {
      subset.push_back(i);
      const bool r = over_subsets(i + 1, left - 1);
      subset.pop_back();
      if (r || budget.exhausted) return r;
    }
    return false;
  };

  for (std::size_t size = 0; size <= k && !found && !budget.exhausted; ++size) over_subsets(0, size);

  if (found) {
    v.witness = std::make_shared<RegularWitness>(std::move(*found));
    if (b.depth_unit < required_depth_unit(e)) {
      v.outcome = Outcome::Unknown;
      v.diagnostics.push_back("a regular witness exists at depth unit " + std::to_string(b.depth_unit) +
                              ", below the " + std::to_string(required_depth_unit(e)) +
                              " needed for its windows to cover every query match");
    } else {
      v.outcome = Outcome::FittingExists;
      v.diagnostics.push_back("regular witness with " + std::to_string(v.witness->mosaics.size()) + " mosaics");
    }
    return v;
  }
  if (budget.exhausted) {
    v.outcome = Outcome::Unknown;
    v.diagnostics.push_back("search budget exhausted after " + std::to_string(budget.steps) + " steps");
    return v;
  }
  v.outcome = is_full_bounds(e, b) ? Outcome::NoFitting : Outcome::NoFittingWithinBounds;
  v.diagnostics.push_back("no base candidate with gluing mosaics at depth unit " + std::to_string(b.depth_unit) +
                          ", degree " + std::to_string(b.degree));
  return v;
}

}  // namespace ontofit
