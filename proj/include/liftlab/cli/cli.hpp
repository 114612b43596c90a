#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace liftlab {

inline constexpr std::string_view kToolVersion = "0.1.0";

inline constexpr int kExitPass = 0;
inline constexpr int kExitPropertyFailure = 1;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitHypotheses = 3;  // also exhausted sampling and inconclusive verdicts

// Runs one command line (without the program name). Reports go to `out` or to
// the --out file, diagnostics to `err`. LIFTLAB_TOL overrides the tolerance.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace liftlab
