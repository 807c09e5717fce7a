#include "ontofit/syntax.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace ontofit {

std::string to_string(Logic l) {
  switch (l) {
    case Logic::ALC: return "alc";
    case Logic::ALCI: return "alci";
    case Logic::ALCQ: return "alcq";
  }
  return "?";
}

std::string to_string(Mode m) {
  switch (m) {
    case Mode::Consistency: return "consistency";
    case Mode::AQ: return "aq";
    case Mode::FullCQ: return "fullcq";
    case Mode::UCQ: return "ucq";
  }
  return "?";
}

std::optional<Logic> logic_from_string(std::string_view s) {
  if (s == "alc" || s == "ALC") return Logic::ALC;
  if (s == "alci" || s == "ALCI") return Logic::ALCI;
  if (s == "alcq" || s == "ALCQ") return Logic::ALCQ;
  return std::nullopt;
}

std::optional<Mode> mode_from_string(std::string_view s) {
  if (s == "consistency") return Mode::Consistency;
  if (s == "aq") return Mode::AQ;
  if (s == "fullcq") return Mode::FullCQ;
  if (s == "ucq" || s == "cq") return Mode::UCQ;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Concept

struct Concept::Node {
  Kind kind = Kind::Top;
  std::string name;
  Role role;
  unsigned n = 0;
  std::vector<Concept> kids;
};

Concept::Concept() {
  static const std::shared_ptr<const Node> top = std::make_shared<Node>();
  node_ = top;
}

Concept Concept::top() { return Concept(); }

Concept Concept::bottom() {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Bottom;
  return Concept(std::move(n));
}

Concept Concept::name(std::string s) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Name;
  n->name = std::move(s);
  return Concept(std::move(n));
}

Concept Concept::negate(Concept c) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Not;
  n->kids.push_back(std::move(c));
  return Concept(std::move(n));
}

Concept Concept::conj(Concept a, Concept b) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::And;
  n->kids = {std::move(a), std::move(b)};
  return Concept(std::move(n));
}

Concept Concept::disj(Concept a, Concept b) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Or;
  n->kids = {std::move(a), std::move(b)};
  return Concept(std::move(n));
}

Concept Concept::exists(Role r, Concept c) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Exists;
  n->role = std::move(r);
  n->kids.push_back(std::move(c));
  return Concept(std::move(n));
}

Concept Concept::forall(Role r, Concept c) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Forall;
  n->role = std::move(r);
  n->kids.push_back(std::move(c));
  return Concept(std::move(n));
}

Concept Concept::at_most(unsigned k, Role r, Concept c) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::AtMost;
  n->n = k;
  n->role = std::move(r);
  n->kids.push_back(std::move(c));
  return Concept(std::move(n));
}

Concept Concept::at_least(unsigned k, Role r, Concept c) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::AtLeast;
  n->n = k;
  n->role = std::move(r);
  n->kids.push_back(std::move(c));
  return Concept(std::move(n));
}

Concept::Kind Concept::kind() const { return node_->kind; }
const std::string& Concept::concept_name() const { return node_->name; }
const Role& Concept::role() const { return node_->role; }
unsigned Concept::number() const { return node_->n; }
const Concept& Concept::operand() const { return node_->kids.at(0); }
const Concept& Concept::left() const { return node_->kids.at(0); }
const Concept& Concept::right() const { return node_->kids.at(1); }

bool Concept::uses_inverse() const {
  switch (kind()) {
    case Kind::Exists:
    case Kind::Forall:
    case Kind::AtMost:
    case Kind::AtLeast:
      if (role().inverted) return true;
      break;
    default:
      break;
  }
  return std::any_of(node_->kids.begin(), node_->kids.end(),
                     [](const Concept& c) { return c.uses_inverse(); });
}

bool Concept::uses_counting() const {
  if (kind() == Kind::AtMost || kind() == Kind::AtLeast) return true;
  return std::any_of(node_->kids.begin(), node_->kids.end(),
                     [](const Concept& c) { return c.uses_counting(); });
}

std::size_t Concept::size() const {
  std::size_t s = 1;
  for (const auto& k : node_->kids) s += k.size();
  return s;
}

std::string Concept::to_string() const {
  switch (kind()) {
    case Kind::Top: return "top";
    case Kind::Bottom: return "bot";
    case Kind::Name: return concept_name();
    case Kind::Not: return "not " + operand().to_string();
    case Kind::And: return "(" + left().to_string() + " and " + right().to_string() + ")";
    case Kind::Or: return "(" + left().to_string() + " or " + right().to_string() + ")";
    case Kind::Exists: return "exists " + role().to_string() + " . " + operand().to_string();
    case Kind::Forall: return "forall " + role().to_string() + " . " + operand().to_string();
    case Kind::AtMost:
      return "atmost " + std::to_string(number()) + " " + role().to_string() + " " +
             operand().to_string();
    case Kind::AtLeast:
      return "atleast " + std::to_string(number()) + " " + role().to_string() + " " +
             operand().to_string();
  }
  return "?";
}

std::strong_ordering operator<=>(const Concept& a, const Concept& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.kind() <=> b.kind(); c != 0) return c;
  if (auto c = a.node_->name <=> b.node_->name; c != 0) return c;
  if (auto c = a.node_->role <=> b.node_->role; c != 0) return c;
  if (auto c = a.node_->n <=> b.node_->n; c != 0) return c;
  const auto& ka = a.node_->kids;
  const auto& kb = b.node_->kids;
  if (auto c = ka.size() <=> kb.size(); c != 0) return c;
  for (std::size_t i = 0; i < ka.size(); ++i) {
    if (auto c = ka[i] <=> kb[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

Concept expand_to_primitives(const Concept& c) {
  using K = Concept::Kind;
  switch (c.kind()) {
    case K::Top:
    case K::Name:
      return c;
    case K::Bottom:
      return Concept::negate(Concept::top());
    case K::Not:
      return Concept::negate(expand_to_primitives(c.operand()));
    case K::And:
      return Concept::conj(expand_to_primitives(c.left()), expand_to_primitives(c.right()));
    case K::Or:
      return Concept::negate(Concept::conj(Concept::negate(expand_to_primitives(c.left())),
                                           Concept::negate(expand_to_primitives(c.right()))));
    case K::Exists:
      return Concept::exists(c.role(), expand_to_primitives(c.operand()));
    case K::Forall:
      return Concept::negate(
          Concept::exists(c.role(), Concept::negate(expand_to_primitives(c.operand()))));
    case K::AtMost:
      return Concept::negate(
          Concept::at_least(c.number() + 1, c.role(), expand_to_primitives(c.operand())));
    case K::AtLeast:
      return Concept::at_least(c.number(), c.role(), expand_to_primitives(c.operand()));
  }
  return c;
}

std::size_t Ontology::size() const {
  std::size_t s = 0;
  for (const auto& ci : inclusions) s += ci.lhs.size() + ci.rhs.size() + 1;
  return s;
}

void check_well_formed(const Ontology& o) {
  for (const auto& ci : o.inclusions) {
    for (const Concept* c : {&ci.lhs, &ci.rhs}) {
      if (c->uses_inverse() && o.logic != Logic::ALCI)
        throw ContractError("inverse role outside ALCI: " + c->to_string());
      if (c->uses_counting() && o.logic != Logic::ALCQ)
        throw ContractError("number restriction outside ALCQ: " + c->to_string());
    }
  }
}

Logic minimal_logic(const Ontology& o) {
  bool inv = false, cnt = false;
  for (const auto& ci : o.inclusions) {
    inv = inv || ci.lhs.uses_inverse() || ci.rhs.uses_inverse();
    cnt = cnt || ci.lhs.uses_counting() || ci.rhs.uses_counting();
  }
  if (inv && cnt) throw ContractError("inverse roles and number restrictions together are unsupported");
  if (inv) return Logic::ALCI;
  if (cnt) return Logic::ALCQ;
  return Logic::ALC;
}

// ---------------------------------------------------------------------------
// ABoxes and queries

std::set<std::string> ABox::individuals() const {
  std::set<std::string> out;
  for (const auto& c : concepts) out.insert(c.ind);
  for (const auto& r : roles) {
    out.insert(r.from);
    out.insert(r.to);
  }
  return out;
}

void ABox::merge(const ABox& other) {
  concepts.insert(other.concepts.begin(), other.concepts.end());
  roles.insert(other.roles.begin(), other.roles.end());
}

std::size_t ABox::size() const { return 2 * concepts.size() + 3 * roles.size(); }

std::set<std::string> CQ::individuals() const {
  std::set<std::string> out;
  for (const auto& t : terms())
    if (!t.var) out.insert(t.name);
  return out;
}

std::set<Term> CQ::terms() const {
  std::set<Term> out;
  for (const auto& a : concept_atoms) out.insert(a.t);
  for (const auto& a : role_atoms) {
    out.insert(a.from);
    out.insert(a.to);
  }
  return out;
}

bool CQ::is_aq() const {
  return vars.empty() && role_atoms.empty() && concept_atoms.size() == 1 &&
         !concept_atoms.begin()->t.var;
}

std::size_t CQ::size() const { return 2 * concept_atoms.size() + 3 * role_atoms.size(); }

void CQ::normalize_vars() {
  vars.clear();
  for (const auto& t : terms())
    if (t.var) vars.insert(t.name);
}

std::size_t UCQ::size() const {
  std::size_t s = 0;
  for (const auto& d : disjuncts) s += d.size();
  return s + (disjuncts.empty() ? 0 : disjuncts.size() - 1);
}

UCQ single(CQ q) {
  UCQ u;
  u.disjuncts.push_back(std::move(q));
  return u;
}

CQ aq(std::string concept_name, std::string ind) {
  CQ q;
  q.concept_atoms.insert(ConceptAtom{std::move(concept_name), Term::individual(std::move(ind))});
  return q;
}

namespace {

struct UnionFind {
  std::vector<int> p;
  explicit UnionFind(std::size_t n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
  void unite(int a, int b) { p[find(a)] = find(b); }
};

}  // namespace

std::vector<CQ> components(const CQ& q) {
  auto ts = q.terms();
  std::vector<Term> terms(ts.begin(), ts.end());
  std::map<Term, int> idx;
  for (std::size_t i = 0; i < terms.size(); ++i) idx[terms[i]] = static_cast<int>(i);
  UnionFind uf(terms.size());
  for (const auto& a : q.role_atoms) uf.unite(idx[a.from], idx[a.to]);
  std::map<int, CQ> by_root;
  for (const auto& a : q.concept_atoms) by_root[uf.find(idx[a.t])].concept_atoms.insert(a);
  for (const auto& a : q.role_atoms) by_root[uf.find(idx[a.from])].role_atoms.insert(a);
  // Order components by their least term for determinism.
  std::map<Term, CQ> ordered;
  for (auto& [root, c] : by_root) {
    c.normalize_vars();
    ordered.emplace(*c.terms().begin(), std::move(c));
  }
  std::vector<CQ> out;
  for (auto& [t, c] : ordered) out.push_back(std::move(c));
  return out;
}

std::vector<ABox> components(const ABox& a) {
  auto is = a.individuals();
  std::vector<std::string> inds(is.begin(), is.end());
  std::map<std::string, int> idx;
  for (std::size_t i = 0; i < inds.size(); ++i) idx[inds[i]] = static_cast<int>(i);
  UnionFind uf(inds.size());
  for (const auto& r : a.roles) uf.unite(idx[r.from], idx[r.to]);
  std::map<int, ABox> by_root;
  for (const auto& c : a.concepts) by_root[uf.find(idx[c.ind])].add(c);
  for (const auto& r : a.roles) by_root[uf.find(idx[r.from])].add(r);
  std::map<std::string, ABox> ordered;
  for (auto& [root, b] : by_root) ordered.emplace(*b.individuals().begin(), std::move(b));
  std::vector<ABox> out;
  for (auto& [n, b] : ordered) out.push_back(std::move(b));
  return out;
}

bool is_connected(const CQ& q) { return components(q).size() <= 1; }

ABox as_abox(const CQ& q) {
  ABox a;
  for (const auto& c : q.concept_atoms) a.add(ConceptAssertion{c.concept_name, c.t.name});
  for (const auto& r : q.role_atoms) a.add(RoleAssertion{r.role, r.from.name, r.to.name});
  return a;
}

std::size_t Example::size() const { return abox.size() + (query ? query->size() : 0); }

std::size_t ExampleCollection::size() const {
  std::size_t s = 0;
  for (const auto& e : positives) s += e.size();
  for (const auto& e : negatives) s += e.size();
  return s;
}

void check_well_formed(const Example& e, Mode mode) {
  if (mode == Mode::Consistency) {
    if (e.query) throw ContractError("consistency examples carry no query");
    return;
  }
  if (!e.query) throw ContractError("example without query in " + to_string(mode) + " mode");
  if (e.query->disjuncts.empty()) throw ContractError("empty UCQ");
  auto inds = e.abox.individuals();
  for (const auto& d : e.query->disjuncts) {
    for (const auto& i : d.individuals())
      if (!inds.count(i)) throw ContractError("query individual '" + i + "' does not occur in its ABox");
    for (const auto& t : d.terms())
      if (t.var && !d.vars.count(t.name))
        throw ContractError("undeclared variable '" + t.name + "'");
    for (const auto& v : d.vars)
      if (!d.terms().count(Term::variable(v)))
        throw ContractError("variable '" + v + "' occurs in no atom");
    if (mode == Mode::AQ && !d.is_aq()) throw ContractError("aq mode requires atomic queries");
    if (mode == Mode::FullCQ && !d.is_full())
      throw ContractError("fullcq mode forbids quantified variables");
  }
  if ((mode == Mode::AQ || mode == Mode::FullCQ) && e.query->disjuncts.size() != 1)
    throw ContractError(to_string(mode) + " mode forbids disjunctions");
}

void check_well_formed(const ExampleCollection& e) {
  for (const auto& x : e.positives) check_well_formed(x, e.mode);
  for (const auto& x : e.negatives) check_well_formed(x, e.mode);
}

void Signature::merge(const Signature& o) {
  concepts.insert(o.concepts.begin(), o.concepts.end());
  roles.insert(o.roles.begin(), o.roles.end());
}

}  // namespace ontofit
