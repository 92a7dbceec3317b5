#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace plaus::cli
{

enum Exit : int
{
    ok = 0,
    usage = 1,
    invalid_input = 2, ///< parse or validation error
    semantic = 3,
    bound = 4,
    internal = 5, ///< engine self-check failed, or fuzzing found a counterexample
};

/// Runs one command line (without the program name). Results go to out,
/// diagnostics to err.
int run( const std::vector<std::string>& args, std::ostream& out, std::ostream& err );

} // namespace plaus::cli
