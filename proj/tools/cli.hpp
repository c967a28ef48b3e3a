#ifndef RCG_TOOLS_CLI_HPP_
#define RCG_TOOLS_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace rcg::cli
{

/// Exit codes of the command-line front end.
enum Exit : int
{
    kOk = 0,            ///< success, or the point is a member
    kNegative = 1,      ///< non-member or empty
    kInvalid = 2,       ///< parse or validation error
    kIo = 3,            ///< file could not be read or written
    kIndeterminate = 4, ///< the solver could not decide
    kUnsupported = 5    ///< operation leaves the RCG class
};

/**
 * @brief Runs one command. args excludes the program name.
 *
 * Reports are written to out as JSON, diagnostics to err.
 */
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace rcg::cli

#endif
