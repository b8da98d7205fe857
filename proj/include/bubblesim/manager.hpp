#pragma once

#include <deque>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bubblesim/pipeline.hpp"
#include "bubblesim/profiler.hpp"
#include "bubblesim/task.hpp"

namespace bubblesim {

// Per-GPU worker metadata: available memory, the submission-ordered task
// queue, the task currently served, and the bubble currently valid.
struct WorkerState {
  int worker_id = 0;
  double gpu_mem = 0.0;  // GiB available to side tasks on this GPU
  std::deque<std::string> task_queue;
  std::optional<std::string> current_task;
  std::optional<Bubble> current_bubble;

  // Unfinished responsibilities: queued tasks plus the current one.
  int task_count() const {
    return static_cast<int>(task_queue.size()) + (current_task ? 1 : 0);
  }
};

// Worker selection for a new side task: among workers whose memory strictly
// exceeds the task's demand, the one with the fewest tasks; ties go to the
// lowest worker id. Returns none when no worker qualifies.
std::optional<int> select_worker(double task_memory,
                                 const std::vector<WorkerState>& workers);

struct SubmitOutcome {
  bool assigned = false;
  int worker_id = -1;
};

// Runs the selection and, on success, appends the task to the chosen
// worker's queue. Rejection is a normal outcome, not an error.
SubmitOutcome submit_task(const TaskProfile& profile,
                          std::vector<WorkerState>& workers);

// What the manager can see about a task when deciding transitions.
struct TaskView {
  SideTaskState state = SideTaskState::Submitted;
  bool initializing = false;  // InitSideTask issued, not yet finished
};

using TaskLookup = std::function<TaskView(const std::string&)>;

enum class ManagerActionKind {
  IssueInit,
  IssueStart,
  IssuePause,
  ArmInitGuard,  // init is in flight at bubble end; arm the enforced limit
};

struct ManagerAction {
  ManagerActionKind kind;
  std::string task_id;
};

// Bubble-start handling: records the bubble, promotes the earliest-submitted
// queued task to current when none is set, then issues InitSideTask for a
// Created task or StartSideTask for a Paused one.
std::vector<ManagerAction> on_bubble_started(WorkerState& worker,
                                             const Bubble& bubble,
                                             const TaskLookup& lookup);

// Bubble-end handling: pauses a running current task (effectiveness is the
// task's concern), arms the enforced limit for an in-flight init, and clears
// the current bubble.
std::vector<ManagerAction> on_bubble_ended(WorkerState& worker, Tick now,
                                           const TaskLookup& lookup);

}  // namespace bubblesim
