#ifndef ONTOFIT_SEMANTICS_HPP_
#define ONTOFIT_SEMANTICS_HPP_

#include <set>

#include "ontofit/hom.hpp"
#include "ontofit/interpretation.hpp"
#include "ontofit/syntax.hpp"

namespace ontofit {

std::set<Element> extension(const Interpretation& i, const Concept& c);

bool is_model(const Interpretation& i, const Ontology& o);
// ContractError when an individual of `a` is not anchored in `i`.
bool is_model(const Interpretation& i, const ABox& a);

// Forest shape relative to the given individual elements: the graph of all
// role pairs except those among individuals is acyclic once directions are
// dropped (loops count as cycles) and each of its components holds at most
// one individual. Under ALC the directed graph must also be a forest rooted
// at the individuals: in-degree at most one, none for individuals, and no
// pair linked in both directions.
bool is_forest_shaped(const Interpretation& i, const std::set<Element>& individuals, Logic logic);

bool is_forest_model(const Interpretation& i, const ABox& a, Logic logic);

// Paths from d of length at most `depth`. Under ALCI, steps may follow roles
// backwards; such steps become inverse edges.
TreeInterpretation unravel(const Interpretation& i, Element d, Logic logic, int depth);

// Unravelings of i glued onto an ABox, truncated at `depth`: ind(A) with A's
// role edges and labels pulled back along h, plus the unraveling of i at h(a)
// glued at each a. Depths are recorded.
Interpretation build_iah(const Interpretation& i, const ABox& a, const Mapping& h, Logic logic, int depth);

// ContractError when a query individual is not anchored.
bool evaluate_query(const Interpretation& i, const CQ& q);
bool evaluate_query(const Interpretation& i, const UCQ& q);

}  // namespace ontofit

#endif  // ONTOFIT_SEMANTICS_HPP_
