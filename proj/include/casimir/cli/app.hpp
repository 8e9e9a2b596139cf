#pragma once

namespace casimir::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int { kOk = 0, kConfigError = 1, kAcceptanceFailure = 2, kNonConvergence = 3 };

/// Entry point of casimir_lab; returns the process exit code.
int run_app(int argc, char** argv);

}  // namespace casimir::cli
