#ifndef ONTOFIT_REASONER_HPP_
#define ONTOFIT_REASONER_HPP_

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ontofit/interpretation.hpp"
#include "ontofit/syntax.hpp"

namespace ontofit {

// An ABox extended with complex concept assertions a : C.
struct KnowledgeBase {
  ABox abox;
  std::vector<std::pair<std::string, Concept>> assertions;
  Ontology ontology;
};

// Exact consistency by type elimination. Number restrictions are supported
// without inverse roles.
bool is_consistent(const KnowledgeBase& kb);

// A finite model of kb built from surviving types, or nothing if kb is
// inconsistent. Anonymous witnesses are fresh elements down to
// `unfold_depth` below each individual and shared per type afterwards.
// ContractError with number restrictions or when the model would exceed
// `max_size` elements.
std::optional<Interpretation> build_model(const KnowledgeBase& kb, int unfold_depth = 0, int max_size = 100000);

}  // namespace ontofit

#endif  // ONTOFIT_REASONER_HPP_
