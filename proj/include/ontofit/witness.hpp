#ifndef ONTOFIT_WITNESS_HPP_
#define ONTOFIT_WITNESS_HPP_

#include <optional>
#include <vector>

#include "ontofit/fit_ucq.hpp"
#include "ontofit/interpretation.hpp"
#include "ontofit/syntax.hpp"

namespace ontofit {

// A finite interpretation split into one part per negative example; part[d]
// is the negative owning element d.
struct FiniteWitness {
  Interpretation j;
  std::vector<int> part;
};

// Each part is a model of its negative ABox refuting its query, and every
// homomorphism from a positive ABox into j has a compatible proper
// variation of some disjunct. Negative ABoxes must have pairwise disjoint
// individuals; ContractError on a malformed partition.
bool check_finite_witness(const FiniteWitness& w, const ExampleCollection& e, Logic logic);

// Repair search from the negative ABoxes: each homomorphism lacking a compatible variation is fixed by
// adding the atoms of a variation, placing variables on fresh elements (up to
// b.finite_witness_size elements per part) or existing reachable ones.
std::optional<FiniteWitness> search_finite_witness(const ExampleCollection& e, Logic logic, const Bounds& b);

// The V_d ontology of a witness: one fresh concept per element fixing its
// labels and its edges and non-edges over the roles of e and w (and their
// inverses under ALCI). Refuses (ContractError) when the witness fails the
// check.
Ontology synthesize_vd_ontology(const FiniteWitness& w, const ExampleCollection& e, Logic logic);

}  // namespace ontofit

#endif  // ONTOFIT_WITNESS_HPP_
