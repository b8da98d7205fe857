#include "bubblesim/manager.hpp"

namespace bubblesim {

std::optional<int> select_worker(double task_memory,
                                 const std::vector<WorkerState>& workers) {
  std::optional<int> selected;
  int min_tasks = 0;
  for (const WorkerState& w : workers) {
    if (!(w.gpu_mem > task_memory)) continue;  // strict: equal memory rejects
    const int n = w.task_count();
    if (!selected || n < min_tasks ||
        (n == min_tasks && w.worker_id < *selected)) {
      selected = w.worker_id;
      min_tasks = n;
    }
  }
  return selected;
}

SubmitOutcome submit_task(const TaskProfile& profile,
                          std::vector<WorkerState>& workers) {
  SubmitOutcome outcome;
  const auto selected = select_worker(profile.est_memory, workers);
  if (!selected) return outcome;
  for (WorkerState& w : workers) {
    if (w.worker_id == *selected) {
      w.task_queue.push_back(profile.task_id);
      break;
    }
  }
  outcome.assigned = true;
  outcome.worker_id = *selected;
  return outcome;
}

std::vector<ManagerAction> on_bubble_started(WorkerState& worker,
                                             const Bubble& bubble,
                                             const TaskLookup& lookup) {
  std::vector<ManagerAction> actions;
  worker.current_bubble = bubble;
  if (!worker.current_task) {
    if (worker.task_queue.empty()) return actions;
    worker.current_task = worker.task_queue.front();
    worker.task_queue.pop_front();
  }
  const TaskView view = lookup(*worker.current_task);
  if (view.state == SideTaskState::Created && !view.initializing) {
    actions.push_back({ManagerActionKind::IssueInit, *worker.current_task});
  } else if (view.state == SideTaskState::Paused) {
    actions.push_back({ManagerActionKind::IssueStart, *worker.current_task});
  }
  return actions;
}

std::vector<ManagerAction> on_bubble_ended(WorkerState& worker, Tick now,
                                           const TaskLookup& lookup) {
  (void)now;
  std::vector<ManagerAction> actions;
  if (worker.current_task) {
    const TaskView view = lookup(*worker.current_task);
    if (view.initializing) {
      actions.push_back({ManagerActionKind::ArmInitGuard, *worker.current_task});
    } else if (view.state == SideTaskState::Running) {
      actions.push_back({ManagerActionKind::IssuePause, *worker.current_task});
    }
  }
  worker.current_bubble.reset();
  return actions;
}

}  // namespace bubblesim
