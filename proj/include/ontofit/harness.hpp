#ifndef ONTOFIT_HARNESS_HPP_
#define ONTOFIT_HARNESS_HPP_

#include <optional>
#include <string>
#include <vector>

#include "ontofit/entailment.hpp"
#include "ontofit/fit_flat.hpp"
#include "ontofit/fit_ucq.hpp"
#include "ontofit/syntax.hpp"

namespace ontofit {

struct ExampleCheck {
  bool positive = true;
  int index = 0;
  // Entailed / NotEntailed for query modes; in consistency mode Entailed
  // stands for "inconsistent".
  EntailmentAnswer::Kind answer = EntailmentAnswer::Kind::Unknown;
  bool as_required = false;
};

// verdict.outcome is FittingExists when the ontology fits, NoFitting when it
// does not and Unknown when some check was inconclusive. Timings are kept out
// of to_text so that reports are reproducible.
struct RunReport {
  FitVerdict verdict;
  std::vector<ExampleCheck> checks;
  double seconds = 0;
  std::optional<Bounds> bounds;
  std::vector<std::string> diagnostics;
  std::string to_text() const;
};

// Checks every example of e against o.
RunReport verify_fit(const Ontology& o, const ExampleCollection& e, const EntailBounds& bounds = {});

// Dispatches on the mode and logic of e (ucq collections are preprocessed
// and use default_bounds unless `bounds` is given), then verifies any
// emitted ontology.
RunReport run_fit(const ExampleCollection& e, const std::optional<Bounds>& bounds = std::nullopt);

}  // namespace ontofit

#endif  // ONTOFIT_HARNESS_HPP_
