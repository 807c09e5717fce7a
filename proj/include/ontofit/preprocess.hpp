#ifndef ONTOFIT_PREPROCESS_HPP_
#define ONTOFIT_PREPROCESS_HPP_

#include <map>
#include <string>
#include <vector>

#include "ontofit/syntax.hpp"

namespace ontofit {

Signature signature_of(const Concept& c);
Signature signature_of(const Ontology& o);
Signature signature_of(const ABox& a);
Signature signature_of(const CQ& q);
Signature signature_of(const UCQ& q);
Signature signature_of(const ExampleCollection& e);

// Smallest `prefix<k>` not among `taken`; the chosen name is added to `taken`.
std::string fresh_name(const std::string& prefix, std::set<std::string>& taken);

// True when every inclusion already has one of the normal forms
// T sub A, A1 and A2 sub A, A sub exists R.B, exists R.B sub A, A sub not B,
// not B sub A.
bool is_normal_form(const Ontology& o);

// Conservative rewriting into normal form with fresh `__f<k>` names.
// Returns the input unchanged when it is already normal.
Ontology normalize_ontology(const Ontology& o);

// Renames individuals to `name#k` (k = example index, positives first) so that
// ABoxes are pairwise disjoint. In ucq mode, positive disjuncts with several
// components are split into one positive per component choice.
ExampleCollection preprocess_collection(const ExampleCollection& e);

// Adds, per positive example, a negative (A, X(a)) with a fresh `__X<k>` and
// a the least individual of A.
ExampleCollection reduce_consistent_fitting(const ExampleCollection& e);

// Union of ABoxes made disjoint by renaming x to `x#k` in the k-th ABox
// whenever x also occurs in another one. `renaming[k]` maps every individual
// of the k-th ABox to its name in the union.
struct DisjointUnion {
  ABox abox;
  std::vector<std::map<std::string, std::string>> renaming;
};
DisjointUnion disjoint_abox_union(const std::vector<ABox>& parts);

ABox rename_individuals(const ABox& a, const std::map<std::string, std::string>& m);
CQ rename_individuals(const CQ& q, const std::map<std::string, std::string>& m);

// The least individual of an ABox; ContractError if the ABox is empty.
std::string least_individual(const ABox& a);

}  // namespace ontofit

#endif  // ONTOFIT_PREPROCESS_HPP_
