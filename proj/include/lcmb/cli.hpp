#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lcmb/asymptotics.hpp"
#include "lcmb/bounds.hpp"
#include "lcmb/verify.hpp"

namespace lcmb::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // a property or validity verdict failed
inline constexpr int kExitUsage = 2;

inline constexpr int kJsonSchemaVersion = 1;

enum class OutputFormat { csv, json, table };

std::optional<OutputFormat> parse_format(std::string_view name);

struct RunConfig {
  std::string subcommand;
  u64 u0 = 1;
  u64 r = 2;
  std::optional<u64> n;
  std::optional<u64> n_from;
  std::optional<u64> n_to;
  u64 step = 1;
  std::optional<Variant> variant;
  std::optional<OutputFormat> format;  // per-command default when unset
  std::string out_path;                // empty: the caller's stream
  u64 sieve_cap = default_sieve_cap();
  unsigned workers = 1;
  bool quick = false;
};

/// The n values selected by --n or --n-from/--n-to/--step, increasing.
/// Throws DomainError on an invalid combination.
std::vector<u64> n_values(const RunConfig& config);

/// Asks running scans to stop after the current row. Async-signal-safe.
void request_stop();
bool stop_requested();
void reset_stop();

int cmd_bounds(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_scan(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_sharpness(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_asympt(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err);
/// Same, with the multi-prime bound swapped out (harness self-test).
int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err,
               const MultiPrimeFn& multi_prime);
int cmd_compare(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Dispatches on config.subcommand, honours out_path, and maps exceptions
/// to exit codes.
int run_command(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace lcmb::cli
