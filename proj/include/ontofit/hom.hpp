#ifndef ONTOFIT_HOM_HPP_
#define ONTOFIT_HOM_HPP_

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ontofit/interpretation.hpp"
#include "ontofit/syntax.hpp"

namespace ontofit {

enum class Want { First, All };

struct HomConstraints {
  // Pins source terms to target elements.
  std::map<Term, Element> fixed;
  // CQ sources only: individuals need not map to their names. ABox sources
  // are always unconstrained on names.
  bool weak = false;
  bool locally_injective = false;
  // Every image must have target depth within [first, second].
  std::optional<std::pair<int, int>> depth_window;
  // Terms not pinned by `fixed` must map to elements reachable from one of
  // these anchors.
  std::optional<std::vector<Element>> reachability_anchors;
  Logic reachability_logic = Logic::ALCI;
};

struct Mapping {
  std::map<Term, Element> assignment;

  Element at(const Term& t) const { return assignment.at(t); }
  Element of_individual(const std::string& a) const { return assignment.at(Term::individual(a)); }
  auto operator<=>(const Mapping&) const = default;
};

std::vector<Mapping> homomorphisms(const ABox& source, const Interpretation& target,
                                   const HomConstraints& c = {}, Want want = Want::All);
std::vector<Mapping> homomorphisms(const CQ& source, const Interpretation& target,
                                   const HomConstraints& c = {}, Want want = Want::All);
// ABox targets are read through from_abox (elements in sorted individual order).
std::vector<Mapping> homomorphisms(const ABox& source, const ABox& target, const HomConstraints& c = {},
                                   Want want = Want::All);
std::vector<Mapping> homomorphisms(const CQ& source, const ABox& target, const HomConstraints& c = {},
                                   Want want = Want::All);

std::optional<Mapping> find_homomorphism(const ABox& source, const Interpretation& target,
                                         const HomConstraints& c = {});
std::optional<Mapping> find_homomorphism(const CQ& source, const Interpretation& target,
                                         const HomConstraints& c = {});
bool has_homomorphism(const ABox& source, const Interpretation& target, const HomConstraints& c = {});
bool has_homomorphism(const CQ& source, const Interpretation& target, const HomConstraints& c = {});

// Re-validates a mapping against the homomorphism conditions and `c`.
bool is_homomorphism(const Mapping& h, const ABox& source, const Interpretation& target,
                     const HomConstraints& c = {});
bool is_homomorphism(const Mapping& h, const CQ& source, const Interpretation& target,
                     const HomConstraints& c = {});

bool is_locally_injective(const Mapping& h, const ABox& source);

std::set<Element> reachable_set(const Interpretation& i, Element d, Logic logic);

// Renders a mapping with target element labels, e.g. "a1->b, a2->b".
std::string to_string(const Mapping& h, const Interpretation& target);

}  // namespace ontofit

#endif  // ONTOFIT_HOM_HPP_
