#ifndef ONTOFIT_FIT_UCQ_HPP_
#define ONTOFIT_FIT_UCQ_HPP_

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ontofit/fit_flat.hpp"
#include "ontofit/interpretation.hpp"
#include "ontofit/syntax.hpp"

namespace ontofit {

struct Bounds {
  int depth_unit = 1;          // trees reach depth 3 * depth_unit
  int degree = 2;
  long max_mosaics = 20000;    // distinct mosaics examined before giving up
  long max_steps = 200000;     // search steps before giving up
  int finite_witness_size = 2; // elements per negative part, 0 disables the finite search
};

// ||E-|| + sum over positives (A, q) of (||(A, q)|| + 1)^||q||, saturating at
// `ceiling` (a note is written to `diagnostic` when it does).
unsigned long long degree_bound(const ExampleCollection& e, std::string* diagnostic = nullptr,
                                unsigned long long ceiling = 1ULL << 40);

// Smallest depth unit for which every query match and every homomorphism
// image required by a positive fits inside one window; FittingExists is only
// reported at or above it.
int required_depth_unit(const ExampleCollection& e);

// depth_unit = min(||E||, max(2, required_depth_unit)); degree = min(degree_bound, max(2, 1 + largest
// individual degree in a negative ABox)).
Bounds default_bounds(const ExampleCollection& e);

// True when `b` reaches 3 ||E|| depth and degree_bound(e).
bool is_full_bounds(const ExampleCollection& e, const Bounds& b);

struct ChoiceFns {
  std::vector<ABox> pos_component;              // per positive
  std::vector<std::vector<CQ>> neg_component;   // per negative, per disjunct
};

struct AvoidSet {
  std::vector<ABox> aboxes;
};

// A positive example is enabled when no component of its ABox is avoided.
bool is_enabled(const Example& positive, const AvoidSet& avoid);

struct Mosaic {
  TreeInterpretation tree;
  int owner = 0;  // negative example index
};

// Forest models of the negative ABoxes side by side: `owner` gives the
// negative example of each element and `parent` its tree parent (-1 for
// individuals). Depths are recorded in `interp.depth`.
struct BaseCandidate {
  Interpretation interp;
  std::vector<int> owner;
  std::vector<int> parent;
};

// The base plus an assignment of a mosaic to every depth-1 base element and
// to every depth-1 node of each assigned mosaic.
struct RegularWitness {
  ChoiceFns ch;
  AvoidSet avoid;
  int depth_unit = 1;
  BaseCandidate base;
  std::vector<Mosaic> mosaics;
  std::map<Element, int> base_assignment;
  std::vector<std::map<int, int>> mosaic_assignment;  // per mosaic: root child -> mosaic
  std::string dump() const;
};

// Unfolds the witness into a forest interpretation of the given depth.
Interpretation assemble(const RegularWitness& w, int depth);

// True when every homomorphism from `component` into `piece` whose range has
// depth within `window` has a compatible proper variation of a disjunct of q.
// `piece` must carry depths.
bool check_condition_b_local(const Interpretation& piece, const ABox& component, const UCQ& q,
                             std::pair<int, int> window, Logic logic);
bool check_condition_b_local(const TreeInterpretation& piece, const ABox& component, const UCQ& q,
                             std::pair<int, int> window, Logic logic);

// Calls `visit` on each base candidate until it returns false. Candidates are
// distinct up to reordering of successors.
void enumerate_base_candidates(const ExampleCollection& e, const ChoiceFns& ch, const AvoidSet& avoid,
                               const Bounds& b, const std::function<bool(const BaseCandidate&)>& visit);

// All mosaics of one negative example, up to reordering of successors.
// ContractError when more than b.max_mosaics exist.
std::vector<Mosaic> enumerate_mosaics(const ExampleCollection& e, const ChoiceFns& ch, const AvoidSet& avoid,
                                      int negative, const Bounds& b);

// Host below d equals m without its deepest layer (depth 3 * depth_unit),
// compared up to reordering of successors.
bool glues_to(const Mosaic& m, int d, const TreeInterpretation& host, int depth_unit);
bool glues_to(const Mosaic& m, Element d, const BaseCandidate& host, int depth_unit);

enum class EliminationOrder { Generational, InPlaceReverse };

// Greatest subset in which every mosaic has, for each root successor, a
// member gluing there.
std::vector<Mosaic> eliminate_mosaics(const std::vector<Mosaic>& s0, int depth_unit,
                                      EliminationOrder order = EliminationOrder::Generational);

// Expects a preprocessed ucq collection. Searches a finite witness first;
// then runs a lazy mosaic search that builds base candidates level by level
// and proves gluing mosaics coinductively.
FitVerdict decide_ucq_fitting(const ExampleCollection& e, const Bounds& b);

}  // namespace ontofit

#endif  // ONTOFIT_FIT_UCQ_HPP_
