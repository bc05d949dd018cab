#ifndef HULLSOLVE_CLI_HPP
#define HULLSOLVE_CLI_HPP

#include <string>
#include <vector>

namespace hullsolve::cli {

/// Exit codes: 0 success, 1 not converged or witness found, 2 input error.
int cli_main(int argc, char** argv);

/// Same, with args[0] as the program name.
int cli_main(const std::vector<std::string>& args);

}  // namespace hullsolve::cli

#endif  // HULLSOLVE_CLI_HPP
