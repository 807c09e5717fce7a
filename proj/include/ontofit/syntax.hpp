#ifndef ONTOFIT_SYNTAX_HPP_
#define ONTOFIT_SYNTAX_HPP_

#include <compare>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ontofit {

enum class Logic { ALC, ALCI, ALCQ };
enum class Mode { Consistency, AQ, FullCQ, UCQ };

std::string to_string(Logic l);
std::string to_string(Mode m);
std::optional<Logic> logic_from_string(std::string_view s);
std::optional<Mode> mode_from_string(std::string_view s);

// Raised for ill-formed syntax objects and for operations called outside
// their precondition (wrong mode, wrong logic, ...).
class ContractError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Role {
  std::string name;
  bool inverted = false;

  Role inverse() const { return Role{name, !inverted}; }
  std::string to_string() const { return inverted ? name + "-" : name; }
  auto operator<=>(const Role&) const = default;
};

class Concept {
 public:
  enum class Kind { Top, Bottom, Name, Not, And, Or, Exists, Forall, AtMost, AtLeast };

  Concept();  // top

  static Concept top();
  static Concept bottom();
  static Concept name(std::string n);
  static Concept negate(Concept c);
  static Concept conj(Concept a, Concept b);
  static Concept disj(Concept a, Concept b);
  static Concept exists(Role r, Concept c);
  static Concept forall(Role r, Concept c);
  static Concept at_most(unsigned n, Role r, Concept c);
  static Concept at_least(unsigned n, Role r, Concept c);

  Kind kind() const;
  const std::string& concept_name() const;
  const Role& role() const;
  unsigned number() const;
  const Concept& operand() const;  // Not and the quantifiers
  const Concept& left() const;
  const Concept& right() const;

  bool uses_inverse() const;
  bool uses_counting() const;
  std::size_t size() const;  // number of AST nodes
  std::string to_string() const;

  friend std::strong_ordering operator<=>(const Concept& a, const Concept& b);
  friend bool operator==(const Concept& a, const Concept& b) { return (a <=> b) == 0; }

 private:
  struct Node;
  explicit Concept(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

// Rewrites Or/Forall/Bottom/AtMost into Top/Name/Not/And/Exists/AtLeast.
Concept expand_to_primitives(const Concept& c);

struct Inclusion {
  Concept lhs;
  Concept rhs;
  auto operator<=>(const Inclusion&) const = default;
  bool operator==(const Inclusion&) const = default;
};

struct Ontology {
  Logic logic = Logic::ALC;
  std::vector<Inclusion> inclusions;

  std::size_t size() const;  // ||O||
  bool operator==(const Ontology&) const = default;
};

// Throws ContractError if some concept uses constructs outside `logic`.
void check_well_formed(const Ontology& o);
// Smallest logic that admits every inclusion of `o`.
Logic minimal_logic(const Ontology& o);

struct ConceptAssertion {
  std::string concept_name;
  std::string ind;
  auto operator<=>(const ConceptAssertion&) const = default;
};

struct RoleAssertion {
  std::string role;
  std::string from;
  std::string to;
  auto operator<=>(const RoleAssertion&) const = default;
};

struct ABox {
  std::set<ConceptAssertion> concepts;
  std::set<RoleAssertion> roles;

  std::set<std::string> individuals() const;
  bool empty() const { return concepts.empty() && roles.empty(); }
  bool has(const ConceptAssertion& a) const { return concepts.count(a) > 0; }
  bool has(const RoleAssertion& a) const { return roles.count(a) > 0; }
  void add(ConceptAssertion a) { concepts.insert(std::move(a)); }
  void add(RoleAssertion a) { roles.insert(std::move(a)); }
  void merge(const ABox& other);
  std::size_t size() const;
  auto operator<=>(const ABox&) const = default;
};

struct Term {
  std::string name;
  bool var = false;

  static Term variable(std::string n) { return Term{std::move(n), true}; }
  static Term individual(std::string n) { return Term{std::move(n), false}; }
  auto operator<=>(const Term&) const = default;
};

struct ConceptAtom {
  std::string concept_name;
  Term t;
  auto operator<=>(const ConceptAtom&) const = default;
};

struct RoleAtom {
  std::string role;
  Term from;
  Term to;
  auto operator<=>(const RoleAtom&) const = default;
};

struct CQ {
  std::set<ConceptAtom> concept_atoms;
  std::set<RoleAtom> role_atoms;
  std::set<std::string> vars;

  std::set<std::string> individuals() const;
  std::set<Term> terms() const;
  bool is_full() const { return vars.empty(); }
  bool is_aq() const;
  std::size_t size() const;  // ||q||
  // Recomputes `vars` from the atoms.
  void normalize_vars();
  auto operator<=>(const CQ&) const = default;
};

struct UCQ {
  std::vector<CQ> disjuncts;

  std::size_t size() const;
  auto operator<=>(const UCQ&) const = default;
};

UCQ single(CQ q);
CQ aq(std::string concept_name, std::string ind);

// Connected components of a CQ (over shared terms) and of an ABox.
std::vector<CQ> components(const CQ& q);
std::vector<ABox> components(const ABox& a);
bool is_connected(const CQ& q);

// The query read as an ABox: variables become individuals.
ABox as_abox(const CQ& q);

struct Example {
  ABox abox;
  std::optional<UCQ> query;  // absent in consistency mode

  std::size_t size() const;
  auto operator<=>(const Example&) const = default;
};

struct ExampleCollection {
  Mode mode = Mode::Consistency;
  Logic logic = Logic::ALC;
  std::vector<Example> positives;
  std::vector<Example> negatives;

  std::size_t size() const;
  bool operator==(const ExampleCollection&) const = default;
};

// Throws ContractError when an invariant of the example types fails.
void check_well_formed(const Example& e, Mode mode);
void check_well_formed(const ExampleCollection& e);

struct Signature {
  std::set<std::string> concepts;
  std::set<std::string> roles;

  void merge(const Signature& o);
  bool operator==(const Signature&) const = default;
};

}  // namespace ontofit

#endif  // ONTOFIT_SYNTAX_HPP_
