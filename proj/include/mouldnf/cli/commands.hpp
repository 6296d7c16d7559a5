#ifndef MOULDNF_CLI_COMMANDS_HPP
#define MOULDNF_CLI_COMMANDS_HPP

#include <cstddef>
#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "mouldnf/cli/config.hpp"

namespace mouldnf::cli {

enum ExitCode : int { kOk = 0, kBoundViolation = 1, kUsageError = 2 };

struct RunOptions {
  std::filesystem::path out_dir = ".";
  bool exact = false;
  std::size_t max_words = 200000;  // cap on enumerated words and per-length growth samples
};

/// Writes normalize.json and normalize.csv.
int cmd_normalize(const RunConfig& config, const RunOptions& opts, std::ostream& log);
/// Writes moulds.json.
int cmd_dump_moulds(const RunConfig& config, const RunOptions& opts, std::ostream& log);
/// Writes one JSON object per check to `out` and to verify.jsonl.
int cmd_verify(const RunConfig& config, const RunOptions& opts, std::ostream& out);
/// Writes semiclassical.csv and semiclassical.json.
int cmd_semiclassical(const RunConfig& config, const RunOptions& opts, std::ostream& log);

/// RFC-4180 record: fields quoted when they contain a comma, quote, CR or LF; CRLF terminated.
std::string csv_record(const std::vector<std::string>& fields);
/// Shortest round-trip decimal form.
std::string format_double(double v);

}  // namespace mouldnf::cli

#endif  // MOULDNF_CLI_COMMANDS_HPP
