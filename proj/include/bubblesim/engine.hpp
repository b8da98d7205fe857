#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bubblesim/config.hpp"
#include "bubblesim/pipeline.hpp"
#include "bubblesim/profiler.hpp"
#include "bubblesim/task.hpp"

namespace bubblesim {

enum class ActivityKind { Init, Step, Kernel, Check };
enum class KillReason { Oom, PauseTimeout, InitTimeout };

struct TransitionRecord {
  Tick t = 0;
  std::string task;
  TransitionKind kind = TransitionKind::CreateSideTask;
  int worker = -1;
};

// A transition command the manager sent (takes effect rpc_latency later).
struct RpcRecord {
  Tick t = 0;  // issue time
  std::string task;
  TransitionKind kind = TransitionKind::CreateSideTask;
  int worker = -1;
};

struct ActivityRecord {
  Tick start = 0;
  Tick end = 0;
  std::string task;
  int worker = -1;
  ActivityKind kind = ActivityKind::Step;
  bool clipped = false;  // aborted by a kill or the end of the run
};

struct KillRecord {
  Tick t = 0;
  std::string task;
  int worker = -1;
  KillReason reason = KillReason::Oom;
};

struct SubmitRecord {
  Tick t = 0;
  std::string task;
};

struct AssignRecord {
  Tick t = 0;
  std::string task;
  int worker = -1;
};

struct DispositionRecord {
  std::string task;
  Disposition disposition = Disposition::Active;
  std::int64_t steps_completed = 0;
  std::optional<int> worker;
};

struct RunMeta {
  ExperimentConfig config;
  std::uint64_t seed = 0;
  bool with_tasks = false;
  std::vector<TaskProfile> profiles;
};

// Everything one simulated experiment produced, in deterministic order.
struct RunTrace {
  RunMeta meta;
  std::vector<OpEvent> ops;       // actual timings, interference applied
  std::vector<Bubble> bubbles;    // as signalled on the delayed timeline
  std::vector<SubmitRecord> submits;
  std::vector<AssignRecord> assigns;
  std::vector<SubmitRecord> rejects;
  std::vector<RpcRecord> rpcs;
  std::vector<TransitionRecord> transitions;
  std::vector<ActivityRecord> activities;
  std::vector<KillRecord> kills;
  std::vector<DispositionRecord> dispositions;
  Tick makespan = 0;

  double makespan_seconds() const {
    return ticks_to_seconds(makespan, meta.config.pipeline.tick_seconds);
  }
};

// Executes the full experiment on a single deterministic timeline: pipeline
// ops, bubble signals, manager decisions, side-task activity, and resource
// limits. Identical (config, with_tasks, seed) inputs give identical traces.
RunTrace run_experiment(const ExperimentConfig& config, bool with_tasks,
                        std::uint64_t seed);

// Re-validates every module invariant over a finished trace: dependency
// soundness, GPU and state exclusivity, memory lifecycle, transition
// legality, breakdown conservation. Returns human-readable violations;
// empty means the trace is sound.
std::vector<std::string> replay_check(const RunTrace& trace);

const char* to_string(ActivityKind kind);
const char* to_string(KillReason reason);

}  // namespace bubblesim
