#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "bubblesim/types.hpp"

namespace bubblesim {

// The five lifecycle states of a side task.
enum class SideTaskState { Submitted, Created, Paused, Running, Stopped };

// The six transitions between them. RunNextStep is the self-loop on Running.
enum class TransitionKind {
  CreateSideTask,
  InitSideTask,
  StartSideTask,
  RunNextStep,
  PauseSideTask,
  StopSideTask,
};

enum class TaskInterface { Iterative, Imperative };

enum class MisbehaviorKind { None, IgnoresPause, MemoryLeak };

struct Misbehavior {
  MisbehaviorKind kind = MisbehaviorKind::None;
  double leak_rate_gib_per_s = 0.0;  // MemoryLeak only
};

struct SideTaskSpec {
  std::string id;
  TaskInterface interface_kind = TaskInterface::Iterative;
  // Ground-truth behavior: step length for iterative tasks, kernel length for
  // imperative ones.
  Tick per_step_duration = 1;
  std::optional<std::int64_t> total_steps;  // nullopt: unbounded
  Tick init_duration = 0;
  double memory_demand = 0.0;  // GiB allocated by InitSideTask
  Misbehavior misbehavior;
  Tick submit_time = 0;
  std::optional<double> memory_limit;  // explicit cap; otherwise profiled + headroom
  // Work units per hour this task achieves on the reference server (for the
  // cost-savings metric).
  std::optional<double> reference_throughput;

  void validate(const std::string& path) const;
};

struct SideTaskRuntime {
  SideTaskSpec spec;
  SideTaskState state = SideTaskState::Submitted;
  std::int64_t steps_completed = 0;
  double memory_allocated = 0.0;  // GiB; nonzero only in Paused/Running
  std::optional<Tick> last_paused;
  std::optional<int> assigned_worker;
  std::optional<Tick> busy_until;  // end of the in-flight step/kernel, Running only
};

class IllegalTransition : public std::runtime_error {
 public:
  IllegalTransition(SideTaskState from, TransitionKind kind);
  SideTaskState from;
  TransitionKind kind;
};

bool transition_legal(SideTaskState from, TransitionKind kind);
SideTaskState transition_target(SideTaskState from, TransitionKind kind);

// Applies one transition: InitSideTask allocates memory_demand, PauseSideTask
// records the effective pause time, StopSideTask releases memory. Throws
// IllegalTransition for any (state, kind) pair outside the legality table.
void apply_transition(SideTaskRuntime& rt, TransitionKind kind, Tick now);

// Outcome of one iterative-interface dispatch: either one step is scheduled
// or the task yields until the next transition (the program-directed limit).
struct IterativeDecision {
  bool run = false;
  Tick step_end = 0;  // meaningful when run
};

// Pre-step check of the iterative interface: runs one step only when the
// remaining bubble time strictly exceeds the profiled per-step estimate.
// `actual_step_ticks` is the ground-truth duration the step will take.
IterativeDecision iterative_run(const SideTaskRuntime& rt, Tick bubble_end,
                                Tick now, double est_step_seconds,
                                double tick_seconds, Tick actual_step_ticks);

// Imperative interface: kernels run back to back with no remaining-time
// check; returns the end of the kernel started at `now`.
Tick imperative_run(const SideTaskRuntime& rt, Tick now, Tick actual_kernel_ticks);

// Terminal (or end-of-run) outcome of a submitted task. Every task lands in
// exactly one of these.
enum class Disposition {
  Rejected,
  Completed,
  KilledOom,
  KilledPauseTimeout,
  KilledInitTimeout,
  Active,  // still queued/paused/running when the pipeline finished
};

const char* to_string(SideTaskState state);
const char* to_string(TransitionKind kind);
const char* to_string(TaskInterface iface);
const char* to_string(MisbehaviorKind kind);
const char* to_string(Disposition d);

}  // namespace bubblesim
