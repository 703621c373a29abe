#pragma once

#include "chow/expression.hpp"
#include "chow/verifier.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace chow::cli {

enum class Format { table, json };

/// Exit statuses of run().
inline constexpr int exit_ok = 0;
inline constexpr int exit_check_failed = 1;
inline constexpr int exit_usage = 2;

/// Reports as aligned text, or as a JSON array of report objects.
std::string emit_report(const std::vector<CheckReport>& reports, Format format);

/// Full command-line entry point; writes results to `out` and diagnostics to
/// `err`, and returns the exit status.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace chow::cli
