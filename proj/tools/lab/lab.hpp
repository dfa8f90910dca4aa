#pragma once

/// @file lab.hpp
/// Batch experiment runner behind the boussinesq_lab executable.
///
///   boussinesq_lab <command> [key=value ...] [config=file] [out=path] [force=true]
///
/// Exit codes: 0 when every check passes, 2 when a check fails (failing rows
/// are listed on the error stream and flagged in the CSV), 1 for usage,
/// configuration and I/O errors, in which case no report is written.

#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "options.hpp"
#include "report.hpp"

namespace bq::lab {

inline constexpr int kExitPass = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitFailed = 2;

/// Names accepted as the positional command word.
[[nodiscard]] std::span<const std::string_view> command_names() noexcept;

/// Validates the options for `command`, runs it and returns the report.
/// Throws ConfigError (or another bq::Error) on invalid input.
[[nodiscard]] Report run_command(std::string_view command, Options& options);

/// Full command-line behaviour: parsing, dispatch, report writing and exit
/// code. Reports go to `out=path`, or to `stdout` when no path is given.
[[nodiscard]] int run(std::span<const std::string> args, std::ostream& stdout_stream, std::ostream& stderr_stream);

[[nodiscard]] std::string usage();

}  // namespace bq::lab
