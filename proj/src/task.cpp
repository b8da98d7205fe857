#include "bubblesim/task.hpp"

#include <string>

#include "bubblesim/limits.hpp"

namespace bubblesim {

void SideTaskSpec::validate(const std::string& path) const {
  if (id.empty()) throw ValidationError(path + ".id", "must be non-empty");
  if (per_step_duration <= 0)
    throw ValidationError(path + ".per_step_duration", "must be > 0");
  if (total_steps && *total_steps <= 0)
    throw ValidationError(path + ".total_steps", "must be > 0 when present");
  if (init_duration < 0)
    throw ValidationError(path + ".init_duration", "must be >= 0");
  if (memory_demand < 0.0)
    throw ValidationError(path + ".memory_demand", "must be >= 0");
  if (submit_time < 0)
    throw ValidationError(path + ".submit_time", "must be >= 0");
  if (misbehavior.kind == MisbehaviorKind::MemoryLeak &&
      misbehavior.leak_rate_gib_per_s <= 0.0)
    throw ValidationError(path + ".misbehavior.rate_gib_per_s",
                          "must be > 0 for a memory leak");
  if (memory_limit && *memory_limit < 0.0)
    throw ValidationError(path + ".memory_limit", "must be >= 0 when present");
  if (reference_throughput && *reference_throughput <= 0.0)
    throw ValidationError(path + ".reference_throughput",
                          "must be > 0 when present");
}

IllegalTransition::IllegalTransition(SideTaskState from_, TransitionKind kind_)
    : std::runtime_error(std::string("illegal transition ") + to_string(kind_) +
                         " from state " + to_string(from_)),
      from(from_),
      kind(kind_) {}

bool transition_legal(SideTaskState from, TransitionKind kind) {
  switch (kind) {
    case TransitionKind::CreateSideTask:
      return from == SideTaskState::Submitted;
    case TransitionKind::InitSideTask:
      return from == SideTaskState::Created;
    case TransitionKind::StartSideTask:
      return from == SideTaskState::Paused;
    case TransitionKind::RunNextStep:
      return from == SideTaskState::Running;
    case TransitionKind::PauseSideTask:
      return from == SideTaskState::Running;
    case TransitionKind::StopSideTask:
      return from == SideTaskState::Created || from == SideTaskState::Paused ||
             from == SideTaskState::Running;
  }
  return false;
}

SideTaskState transition_target(SideTaskState from, TransitionKind kind) {
  if (!transition_legal(from, kind)) throw IllegalTransition(from, kind);
  switch (kind) {
    case TransitionKind::CreateSideTask: return SideTaskState::Created;
    case TransitionKind::InitSideTask: return SideTaskState::Paused;
    case TransitionKind::StartSideTask: return SideTaskState::Running;
    case TransitionKind::RunNextStep: return SideTaskState::Running;
    case TransitionKind::PauseSideTask: return SideTaskState::Paused;
    case TransitionKind::StopSideTask: return SideTaskState::Stopped;
  }
  throw IllegalTransition(from, kind);
}

void apply_transition(SideTaskRuntime& rt, TransitionKind kind, Tick now) {
  rt.state = transition_target(rt.state, kind);
  switch (kind) {
    case TransitionKind::InitSideTask:
      rt.memory_allocated = rt.spec.memory_demand;
      break;
    case TransitionKind::PauseSideTask:
      rt.last_paused = now;
      rt.busy_until.reset();
      break;
    case TransitionKind::StopSideTask:
      rt.memory_allocated = 0.0;
      rt.busy_until.reset();
      break;
    default:
      break;
  }
}

IterativeDecision iterative_run(const SideTaskRuntime& rt, Tick bubble_end,
                                Tick now, double est_step_seconds,
                                double tick_seconds, Tick actual_step_ticks) {
  IterativeDecision d;
  if (rt.state != SideTaskState::Running) return d;
  const double remaining = ticks_to_seconds(bubble_end - now, tick_seconds);
  if (program_directed_gate(remaining, est_step_seconds) == Gate::Run) {
    d.run = true;
    d.step_end = now + actual_step_ticks;
  }
  return d;
}

Tick imperative_run(const SideTaskRuntime& rt, Tick now,
                    Tick actual_kernel_ticks) {
  (void)rt;
  return now + actual_kernel_ticks;
}

const char* to_string(SideTaskState state) {
  switch (state) {
    case SideTaskState::Submitted: return "SUBMITTED";
    case SideTaskState::Created: return "CREATED";
    case SideTaskState::Paused: return "PAUSED";
    case SideTaskState::Running: return "RUNNING";
    case SideTaskState::Stopped: return "STOPPED";
  }
  return "?";
}

const char* to_string(TransitionKind kind) {
  switch (kind) {
    case TransitionKind::CreateSideTask: return "create";
    case TransitionKind::InitSideTask: return "init";
    case TransitionKind::StartSideTask: return "start";
    case TransitionKind::RunNextStep: return "run_next_step";
    case TransitionKind::PauseSideTask: return "pause";
    case TransitionKind::StopSideTask: return "stop";
  }
  return "?";
}

const char* to_string(TaskInterface iface) {
  return iface == TaskInterface::Iterative ? "iterative" : "imperative";
}

const char* to_string(MisbehaviorKind kind) {
  switch (kind) {
    case MisbehaviorKind::None: return "none";
    case MisbehaviorKind::IgnoresPause: return "ignores_pause";
    case MisbehaviorKind::MemoryLeak: return "memory_leak";
  }
  return "?";
}

const char* to_string(Disposition d) {
  switch (d) {
    case Disposition::Rejected: return "rejected";
    case Disposition::Completed: return "completed";
    case Disposition::KilledOom: return "killed-oom";
    case Disposition::KilledPauseTimeout: return "killed-pause-timeout";
    case Disposition::KilledInitTimeout: return "killed-init-timeout";
    case Disposition::Active: return "active";
  }
  return "?";
}

}  // namespace bubblesim
