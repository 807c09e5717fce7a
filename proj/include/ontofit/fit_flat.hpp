#ifndef ONTOFIT_FIT_FLAT_HPP_
#define ONTOFIT_FIT_FLAT_HPP_

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ontofit/hom.hpp"
#include "ontofit/interpretation.hpp"
#include "ontofit/syntax.hpp"

namespace ontofit {

enum class Outcome { FittingExists, NoFitting, NoFittingWithinBounds, Unknown };
std::string to_string(Outcome o);

struct RegularWitness;

// Evidence behind a verdict. For NoFitting in consistency mode: a
// homomorphism from negative `negative_index` into `target` (the union of
// positive ABoxes). For aq/fullcq: the saturated candidate, plus either the
// violated negative or a homomorphism from inconsistent positive
// `positive_index` into the candidate.
struct Certificate {
  std::optional<Mapping> hom;
  std::optional<int> negative_index;
  std::optional<int> positive_index;
  std::optional<ABox> target;
  std::optional<ABox> saturated;
  std::string text;
};

struct FitVerdict {
  Outcome outcome = Outcome::Unknown;
  std::optional<Ontology> ontology;
  Certificate certificate;
  std::shared_ptr<const RegularWitness> witness;
  std::optional<Interpretation> finite_witness;
  std::vector<std::string> diagnostics;
};

// { top sub bot }
Ontology bottom_ontology(Logic logic);

FitVerdict decide_consistency_fitting(const ExampleCollection& e);

// The ontology whose consistent Sigma-ABoxes are exactly those mapping
// homomorphically into `a`, over fresh names __V_<individual>.
Ontology synthesize_csp_ontology(const ABox& a, const Signature& sigma);

FitVerdict decide_alcq_fitting(const ExampleCollection& e);

enum class ExampleClass { Consistent, Inconsistent };
ExampleClass classify_example(const Example& ex);

// Replaces each inconsistent negative (A, q) by (A, X(a)) with a fresh
// __X<k> and a the least individual of A.
ExampleCollection normalize_negatives(const ExampleCollection& e);

struct Completion {
  ABox base;                          // union of negative ABoxes
  std::set<ConceptAssertion> added;   // heads added by saturation
  std::vector<std::map<std::string, std::string>> renaming;  // per negative, into base
  ABox abox() const;
};

// Least fixpoint of the rule adding Q(h(a)) for each positive (A, .. Q(a) ..)
// and homomorphism h from A into the candidate. In fullcq mode only
// consistent positives fire.
Completion saturate_refutation_candidate(const ExampleCollection& e);

FitVerdict decide_aq_fitting(const ExampleCollection& e);

// The V_a ontology of the completion: every model maps into it and copies
// its concept assertions. Throws std::logic_error if the result fails to fit.
Ontology synthesize_fitting_ontology_flat(const Completion& c, const ExampleCollection& e);

FitVerdict decide_fullcq_fitting(const ExampleCollection& e);

// Ground check of fitting for consistency, aq and fullcq collections.
bool fits_flat(const Ontology& o, const ExampleCollection& e);

}  // namespace ontofit

#endif  // ONTOFIT_FIT_FLAT_HPP_
