#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bubblesim/task.hpp"
#include "bubblesim/types.hpp"

namespace bubblesim {

struct RunTrace;  // engine.hpp

// Hourly prices of the training server and of the cheap reference server
// side-task work is valued against.
struct PriceConfig {
  double price_server_1 = 3.96;  // $/hour, training server
  double price_server_2 = 0.18;  // $/hour, reference side-task server

  void validate() const;
};

// Fractional makespan growth due to side tasks; negative when training got
// faster. Errors when the baseline time is not positive.
double time_increase(double t_no_seconds, double t_with_seconds);

struct TaskWork {
  std::string id;
  double work = 0.0;  // steps (iterative) or kernels (imperative) completed
  std::optional<double> throughput_per_hour;  // on the reference server
};

struct CostBreakdown {
  double c_no_side = 0.0;
  double c_extra = 0.0;
  double c_side_tasks = 0.0;
  double s = 0.0;
};

// S = (C_sideTasks - C_extra) / C_noSideTask with
//   C_noSideTask = P1 * t_no,  C_extra = delta_t * C_noSideTask,
//   C_sideTasks  = sum P2 * (W / Th).
// Times are converted to hours before applying hourly prices. A task with
// nonzero work but no reference throughput is a validation error.
CostBreakdown cost_savings(double t_no_seconds, double delta_t,
                           const std::vector<TaskWork>& work,
                           const PriceConfig& prices);

// How each stage's bubble time was spent. Components always sum exactly to
// the stage's total bubble time (tick integers).
struct StageBreakdown {
  int stage = 0;
  Tick used_by_side_tasks = 0;
  Tick runtime_overhead = 0;  // checks, transition handling, init time
  Tick idle_oom = 0;          // no task fit this stage's memory
  Tick idle_insufficient_time = 0;

  Tick total() const {
    return used_by_side_tasks + runtime_overhead + idle_oom +
           idle_insufficient_time;
  }
};

std::vector<StageBreakdown> bubble_breakdown(const RunTrace& trace);

struct TaskOutcome {
  std::string id;
  Disposition disposition = Disposition::Active;
  std::int64_t work_done = 0;
  std::optional<int> worker;
};

struct MetricsReport {
  double t_no_side = 0.0;    // seconds
  double t_with_side = 0.0;  // seconds
  double delta_t = 0.0;
  double c_no_side = 0.0;
  double c_extra = 0.0;
  double c_side_tasks = 0.0;
  double s = 0.0;
  double bubble_rate = 0.0;  // of the baseline schedule
  std::vector<TaskOutcome> tasks;
  std::vector<StageBreakdown> breakdown;
  double tick_seconds = 0.001;
};

MetricsReport build_report(const RunTrace& baseline, const RunTrace& treatment,
                           const PriceConfig& prices);

}  // namespace bubblesim
