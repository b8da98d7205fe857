#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bubblesim/pipeline.hpp"
#include "bubblesim/task.hpp"

namespace bubblesim {

// Measured characteristics of one side task: per-step duration (iterative
// interface only) and peak GPU memory.
struct TaskProfile {
  std::string task_id;
  std::optional<double> est_per_step_duration;  // seconds; none for imperative
  std::optional<double> max_per_step_duration;  // seconds; none for imperative
  double est_memory = 0.0;                      // GiB
  int profiled_steps = 0;
};

struct StageBubbleProfile {
  std::vector<Tick> durations;  // sorted ascending
  double available_memory = 0.0;
};

struct BubbleProfile {
  std::vector<StageBubbleProfile> stages;
  double rate = 0.0;
};

struct ProfileOptions {
  int n_steps = 32;
  double step_jitter = 0.0;  // multiplicative, 0 = noise-free
  double tick_seconds = 0.001;
};

// Runs the task body standalone on a dedicated simulated GPU for n steps and
// records mean/max step duration and peak memory. Deterministic per seed.
TaskProfile profile_task(const SideTaskSpec& spec, const ProfileOptions& opts,
                         std::uint64_t seed);

// Dry-runs one epoch of the pipeline and collects per-stage bubble shapes.
BubbleProfile profile_bubbles(const PipelineConfig& config);

// Deterministic per-task RNG stream, decoupled across tasks and uses.
std::uint64_t stream_seed(std::uint64_t seed, const std::string& task_id,
                          const char* salt);

// Ground-truth duration of one step/kernel, optionally jittered. Never
// rounds below one tick.
Tick jittered_step_ticks(Tick base, double jitter, std::uint64_t& rng_state);

}  // namespace bubblesim
