#pragma once

#include <CLI11.hpp>

#include <functional>

namespace fks::cli {

enum ExitCode : int { kOk = 0, kConfigError = 1, kAborted = 2, kCheckFailed = 3 };

/// Each register_* adds one subcommand to app and returns the action that
/// runs it after parsing.
using Action = std::function<int()>;

Action register_run(CLI::App& app);
Action register_sweep(CLI::App& app);
Action register_diagnose(CLI::App& app);
Action register_theory(CLI::App& app);
Action register_oracle_check(CLI::App& app);
Action register_info(CLI::App& app);

} // namespace fks::cli
