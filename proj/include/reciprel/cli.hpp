#pragma once

// Command-line front end. Subcommands: wh, metric, transform, nullcone,
// contract, planck, hamilton verify.
//
// Exit status: 0 success or pass, 1 property-check failure (the failing
// residual is written to the error stream), 2 usage or input error.
// Output is a pure function of the arguments, the seed and RECIPREL_TOL.

#include <iosfwd>
#include <string>
#include <vector>

namespace reciprel::cli {

inline constexpr int kSchemaVersion = 1;

inline constexpr int kExitOk = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

/// Environment variable that replaces every subcommand's default tolerance
/// when --tol is not given.
inline constexpr const char* kTolEnv = "RECIPREL_TOL";

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Convenience for tests: args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace reciprel::cli
