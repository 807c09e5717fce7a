#ifndef ONTOFIT_VARIATIONS_HPP_
#define ONTOFIT_VARIATIONS_HPP_

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ontofit/hom.hpp"
#include "ontofit/interpretation.hpp"
#include "ontofit/syntax.hpp"

namespace ontofit {

// Variations of p obtained by identifying variables and replacing variables
// with individuals of `a`, kept when proper: role atoms between individuals
// occur in `a`, and the structure of p' is forest-shaped with the individuals
// of p' as roots. Deduplicated up to variable renaming; empty when p mentions
// an individual outside `a`.
std::vector<CQ> enumerate_proper_variations(const CQ& p, const ABox& a, Logic logic);

bool is_proper_variation(const CQ& pv, const ABox& a, Logic logic);

// A proper variation read as a conjunction of concept-level conditions.
struct RolledVariation {
  std::vector<ConceptAssertion> ground;                   // A(a)
  std::vector<std::pair<std::string, Concept>> attached;  // a : C, one per variable tree at a
  std::vector<Concept> floating;                          // C non-empty, one per individual-free component
  // Largest number of variables in an attached tree; -1 when some component floats.
  int radius = 0;
};

// Rolls up a proper variation. Nothing when some pair of terms carries more
// than one role atom, which has no concept counterpart. Under ALC trees are
// rolled from their roots with forward roles only.
std::optional<RolledVariation> roll_up(const CQ& pv, Logic logic);

// Some variation in `variations` (of a disjunct of a positive query over
// ABox `a`) has a weak homomorphism into `target` that agrees with h on
// individuals and sends each variable to an element reachable from h(ind(a)).
bool has_compatible_variation(const std::vector<CQ>& variations, const ABox& a, const Mapping& h,
                              const Interpretation& target, Logic logic);

}  // namespace ontofit

#endif  // ONTOFIT_VARIATIONS_HPP_
