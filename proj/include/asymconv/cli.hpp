#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace asymconv {

enum ExitCode : int { kExitOk = 0, kExitVerifyFailed = 1, kExitParse = 2, kExitDomain = 3 };

inline constexpr double kDefaultTolerance = 1e-2;

struct RunConfig {
    enum class Command { Types, Constant, Convolve, Verify, Bernstein, DemoMonomial };
    Command command = Command::Types;
    std::vector<std::string> inputs;
    std::optional<std::string> report;  // path prefix for .json and .csv
    double tolerance = kDefaultTolerance;
    int jobs = 1;
};

// Tolerance from ASYMCONV_TOL, or the default when unset. Throws ParseError on junk.
double tolerance_from_env();

// argv[0] is the program name. Never throws; failures map to the exit codes above.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace asymconv
