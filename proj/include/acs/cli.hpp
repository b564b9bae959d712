#pragma once

// Command-line front end.  `parse_args` turns argv into a RunConfig and `run`
// executes it, writing the artifact to the configured path (or `out`) and
// errors to `err` as a single JSON object {"code", "message"}.

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "acs/error.hpp"

namespace acs::cli {

enum class Command { acs, spectrum, residual, completeness, thermo };
enum class Format { csv, json };

struct RunConfig {
  Command command = Command::acs;
  std::map<std::string, std::string> params;  // flag name (without dashes) -> value
  std::optional<std::string> output_path;
  std::optional<Format> format;  // command default when unset
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitDomain = 3;
inline constexpr int kExitNumerical = 4;

int exit_code_for(ErrorCode code) noexcept;

// 17 significant digits, shortest "general" layout; -0 is printed as 0.
std::string format_double(double v);

// Throws acs::Error(InvalidArgument) on malformed command lines.  A help
// request yields std::nullopt after printing usage to `out`.
std::optional<RunConfig> parse_args(const std::vector<std::string>& args, std::ostream& out);

int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// parse_args + run with exit-status mapping; args excludes the program name.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace acs::cli
