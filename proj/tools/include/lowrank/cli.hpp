#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace lowrank::cli {

enum class Format { Text, KeyValue };

// Exit statuses.
inline constexpr int kExitOk = 0;
inline constexpr int kExitPrecondition = 1;
inline constexpr int kExitNumerical = 2;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitParse = 65;

struct CircleArg {
  double cx = 0.0;
  double cy = 0.0;
  double r = 1.0;
};

struct LineArg {
  double px = 0.0;
  double py = 0.0;
  double dx = 1.0;
  double dy = 0.0;
};

struct RunConfig {
  std::string verb;
  std::vector<std::string> inputs;
  double tol = 1e-9;
  double merge_tol = 1e-8;
  std::uint64_t seed = 0;
  Format format = Format::Text;
  /// Where to write the constructed matrix (or chain, or table), if any.
  std::string out;
  std::optional<CircleArg> circle;
  std::optional<LineArg> line;
  /// Unset means the verb's own default.
  std::optional<int> k;
  std::optional<int> n;
  long trials = 10000;
};

const std::vector<std::string>& verbs();

/// Parses argv into a config. On --help, usage errors or bad flags it writes
/// to `out`/`err` and returns the exit status instead.
struct ParseOutcome {
  std::optional<RunConfig> config;
  int status = kExitOk;
};
ParseOutcome parse_args(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Runs one verb and writes its report to `out`. Errors go to `err`; the
/// return value is the exit status.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_args followed by run.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lowrank::cli
