#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "dlcz/config.hpp"

namespace dlcz::cli {

inline constexpr std::string_view version = "0.1.0";

enum ExitCode : int { success = 0, runtime_failure = 1, usage_failure = 2 };

/// Entry point of `dlcz-sim`; args[0] is the program name. CSV goes to the
/// --out file or to `out`, diagnostics and progress to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses "start:stop:step unit" (e.g. "0:8:0.5 us"). The grid includes
/// `stop` when it lies on a step. Throws UnitError / ParseError / DomainError.
std::vector<double> parse_grid(std::string_view text, Dimension dim);

/// FNV-1a of the serialised configuration.
std::uint64_t config_hash(const ExperimentConfig& config);

}  // namespace dlcz::cli
