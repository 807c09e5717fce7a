#ifndef ONTOFIT_GENERATE_HPP_
#define ONTOFIT_GENERATE_HPP_

#include "ontofit/syntax.hpp"

namespace ontofit {

// Reserved names used by the reduction.
inline constexpr const char* kReal = "__Real";
inline constexpr const char* kChoice = "__Choice";
inline constexpr const char* kChoiceBar = "__ChoiceBar";
inline constexpr const char* kFail = "__F";
inline constexpr const char* kSucc = "__s";
std::string bar_name(const std::string& concept_name);

// A ucq collection over ALCI that has a fitting ALCI ontology iff
// a together with o does not entail q. o is normalized first. Per concept
// name A of o and q it emits the clash example, the choice gadget and both
// transfer examples. The encodings of o and of q only match Real elements.
// ContractError on number restrictions or an empty ABox.
ExampleCollection generate_from_entailment(const ABox& a, const Ontology& o, const CQ& q);

}  // namespace ontofit

#endif  // ONTOFIT_GENERATE_HPP_
