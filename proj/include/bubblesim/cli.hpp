#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace bubblesim::cli {

// Exit codes shared by all subcommands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;  // infeasible or invalid config
inline constexpr int kExitSchema = 2;      // parse/schema failure
inline constexpr int kExitViolation = 3;   // replay_check found a bug

enum class TableFormat { Csv, JsonLines };

// Writes bubble and task profiles for a config. out_path "-" prints to stdout.
int cmd_profile(const std::string& config_path, const std::string& out_path);

// Runs baseline (no side tasks) and treatment on the same seed; writes both
// traces, the metrics report, and the bubble-time breakdown table.
int cmd_run(const std::string& config_path, const std::string& out_dir,
            std::optional<std::uint64_t> seed_override, TableFormat format);

// Cartesian parameter sweep; one isolated run per point plus an aggregate
// table. Points may execute in parallel workers.
int cmd_sweep(const std::string& config_path, const std::string& out_dir,
              int jobs, TableFormat format);

// Re-validates a written trace with replay_check.
int cmd_check(const std::string& trace_path);

}  // namespace bubblesim::cli
