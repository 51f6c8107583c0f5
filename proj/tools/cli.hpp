#ifndef ORDERFLOW_TOOLS_CLI_HPP_
#define ORDERFLOW_TOOLS_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace orderflow::cli {

  // Runs one subcommand.  Returns 0 on success, 1 on a domain error and 2 on
  // a usage error; diagnostics go to err.
  int dispatch(std::vector<std::string> const& args, std::ostream& out, std::ostream& err);

}  // namespace orderflow::cli

#endif  // ORDERFLOW_TOOLS_CLI_HPP_
