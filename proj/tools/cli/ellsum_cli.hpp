#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ellsum::cli {

enum class Command { Ap, Rank, Residue, WeightedResidue, Classnum, Trace, MomentCheck, MassCheck, IsogenyCount, Geometry };
enum class Format { Csv, Json };

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInterrupted = 3;

struct JobConfig {
  Command command = Command::Ap;
  std::optional<std::filesystem::path> family_path;
  std::int64_t prime = 0;
  std::int64_t prime_max = 199;
  std::int64_t xmax = 0;
  int n = 2;
  std::optional<std::string> preset;
  std::optional<std::string> lambda;
  std::string grid = "geometric:1.25";
  std::int64_t level = 1;
  std::vector<std::int64_t> levels{1, 3, 5, 9, 15};
  int n_max = 6;
  int weight = 2;
  std::int64_t a = 0;
  std::int64_t f = 1;
  std::optional<std::int64_t> disc;
  std::optional<std::int64_t> disc_max;
  std::optional<std::int64_t> mw_rank;
  std::vector<std::int64_t> b;
  std::vector<std::int64_t> ranks;
  unsigned workers = 1;
  std::optional<std::filesystem::path> checkpoint_path;
  std::optional<std::filesystem::path> output_path;
  Format format = Format::Csv;
  /// Stop after this many prime batches, leaving a checkpoint (testing aid).
  std::optional<std::int64_t> halt_after;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Worker count: ELLSUM_WORKERS when set, otherwise the hardware thread count.
unsigned default_workers();

/// Parses a full command line; `help` is set when --help was requested and
/// the help text has been written to `out`.
JobConfig parse_args(int argc, const char* const* argv, std::ostream& out, bool& help);

/// Runs a job. Report goes to the output path or `out`, written only after
/// the job completes; diagnostics go to `err`.
int run(const JobConfig& config, std::ostream& out, std::ostream& err);

/// parse_args + run with exit-code mapping.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Async-signal-safe: asks a running job to checkpoint and stop.
void request_stop() noexcept;
void reset_stop() noexcept;

}  // namespace ellsum::cli
