#pragma once

#include <iosfwd>
#include <string>

namespace funsol {

// Exit codes shared by the CLI and the in-process command tests:
// 0 ok, 1 usage/config error, 2 hypothesis violation, 3 solver failure,
// 4 verification mismatch.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitHypothesis = 2;
inline constexpr int kExitSolver = 3;
inline constexpr int kExitMismatch = 4;

/// Full pipeline run; prints the summary on `out` and writes any configured
/// output files.
int cmd_solve(const std::string& config_path, std::ostream& out, std::ostream& err);

/// Pipeline plus the direct fixed-point solve; exit 0 iff the fields agree
/// within the configured comparison tolerance.
int cmd_verify(const std::string& config_path, std::ostream& out, std::ostream& err);

/// Re-solves at `levels` doubled grid resolutions (the profile tabulation is
/// refined 4x per level to keep its error subordinate) and tabulates gamma
/// drift, residual decay and field self-convergence.
int cmd_converge(const std::string& config_path, int levels, std::ostream& out, std::ostream& err);

}  // namespace funsol
