#ifndef ONTOFIT_TESTS_ORACLES_HPP_
#define ONTOFIT_TESTS_ORACLES_HPP_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ontofit/interpretation.hpp"
#include "ontofit/syntax.hpp"

// Brute-force reference implementations, written independently of the
// library's search code so that they can serve as oracles.
namespace oracle {

using namespace ontofit;

// All maps from ind(source) to ind(target) preserving every assertion.
std::vector<std::map<std::string, std::string>> all_homs(const ABox& source, const ABox& target);

// Union of the ABoxes with the k-th ABox's individuals renamed to x@k.
struct Union {
  ABox abox;
  std::vector<std::map<std::string, std::string>> renaming;
};
Union tagged_union(const std::vector<ABox>& parts);

// Consistency fitting: with positives, no negative maps into their union.
bool consistency_fits(const ExampleCollection& e);

// AQ fitting: some completion of the negatives' union by positive heads
// satisfies the implication and the refutation conditions. `best` receives the
// least such completion when there is one.
bool aq_fits(const ExampleCollection& e, ABox* best = nullptr);

// FullCQ fitting with inconsistent examples: implication for consistent
// positives, some unsatisfied concept atom for consistent negatives, no
// homomorphism for inconsistent positives.
bool fullcq_fits(const ExampleCollection& e);

// AQ fitting by an ontology that is also consistent with every positive
// ABox: the positives' ABoxes join the negatives' in the completion base.
bool consistent_aq_fits(const ExampleCollection& e);

bool is_inconsistent_example(const Example& ex);

// Standard-name interpretations over the signature of (a, o, q) with at most
// `max_size` elements; returns a model of a and o falsifying q if one exists.
// ALC and ALCI only.
std::optional<Interpretation> small_countermodel(const ABox& a, const Ontology& o, const UCQ& q, int max_size);

// Same enumeration without a query.
std::optional<Interpretation> small_model(const ABox& a, const Ontology& o, int max_size);

// The transitive closure of a digraph by repeated boolean matrix squaring.
std::vector<std::vector<bool>> closure(std::vector<std::vector<bool>> adj);

// Exhaustive query evaluation over all assignments of the variables.
bool eval_by_assignment(const Interpretation& i, const CQ& q);

}  // namespace oracle

#endif  // ONTOFIT_TESTS_ORACLES_HPP_
