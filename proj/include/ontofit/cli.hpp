#ifndef ONTOFIT_CLI_HPP_
#define ONTOFIT_CLI_HPP_

#include <iosfwd>

namespace ontofit {

// Exit codes: 0 fitting exists / fits / entailed, 1 no fitting / does not
// fit / not entailed, 2 unknown or no fitting within bounds, 3 input error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ontofit

#endif  // ONTOFIT_CLI_HPP_
