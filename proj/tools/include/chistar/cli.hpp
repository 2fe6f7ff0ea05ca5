#pragma once

// Command-line front end. parse_args turns argv into a RunConfig; run executes
// it and writes results to the configured sink. Kept in a library so tests can
// drive it without spawning processes.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace chistar::cli {

enum class OutputFormat { Json, Jsonl, Table };

struct RunConfig {
  std::string subcommand;
  long prec_bits = 128;
  std::int64_t order = 0;      // 0 lets the evaluator choose
  long d_max = 0;              // --max-disc / --dmax / --dmax-override
  unsigned workers = 1;
  std::string cache_dir;       // empty: CHISTAR_CACHE_DIR or no cache
  std::optional<OutputFormat> format;  // unset: the subcommand default
  std::uint64_t seed = 1;
  bool strict = false;
  std::string out;             // empty: stdout

  // subcommand inputs
  std::string function = "j";  // expand / eval
  std::string tau_re = "0";
  std::string tau_im = "1";
  std::vector<long> discs;     // special / classpoly
  std::string kind = "j";      // classpoly
  std::string poly_file;       // ao-search
  std::string maps_file;       // maps-det
  std::uint64_t samples = 200;  // verify-bounds sampling per regime
  std::uint64_t robin_limit = 10000;
};

/// Exit codes: 0 success, 1 failed check (or undetermined under --strict),
/// 2 usage error, 3 runtime error (unreadable input, cache corruption, ...).
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitRuntime = 3;

struct ParseResult {
  std::optional<RunConfig> config;
  int exit_code = kExitOk;  // meaningful when config is empty (help or error)
  std::string message;      // help text or the parse error
};

ParseResult parse_args(int argc, const char* const* argv);

/// Validates the config (workers >= 1, precision >= 64, ...), then dispatches.
/// Errors are reported on `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// run() with output routed to config.out (or std::cout) and std::cerr.
int run(const RunConfig& config);

}  // namespace chistar::cli
