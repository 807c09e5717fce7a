#ifndef ONTOFIT_ENTAILMENT_HPP_
#define ONTOFIT_ENTAILMENT_HPP_

#include <optional>
#include <string>

#include "ontofit/interpretation.hpp"
#include "ontofit/syntax.hpp"

namespace ontofit {

bool check_consistency(const ABox& a, const Ontology& o, Logic logic);

// ContractError when q has variables.
bool entails_ground(const ABox& a, const Ontology& o, const CQ& q);

struct EntailBounds {
  int max_depth = 8;  // deepest unfolding tried when materializing a countermodel
  int max_model_size = 20000;
};

struct EntailmentAnswer {
  enum class Kind { Entailed, NotEntailed, Unknown } kind = Kind::Unknown;
  std::optional<Interpretation> countermodel;
  std::string diagnostics;
};

std::string to_string(EntailmentAnswer::Kind k);

// Entailed and NotEntailed are exact: the query is split into its proper
// variations, each rolled up into concepts, and a countermodel exists iff
// some choice of one violated concept per variation is consistent.
// NotEntailed carries a verified finite countermodel; Unknown reports that
// none was materialized within the bounds.
EntailmentAnswer entails_ucq_bounded(const ABox& a, const Ontology& o, const UCQ& q, Logic logic,
                                     const EntailBounds& bounds = {});

}  // namespace ontofit

#endif  // ONTOFIT_ENTAILMENT_HPP_
