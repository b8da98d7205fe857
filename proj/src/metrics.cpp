#include "bubblesim/metrics.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "bubblesim/engine.hpp"

namespace bubblesim {

void PriceConfig::validate() const {
  if (!(price_server_1 > 0.0))
    throw ValidationError("prices.price_server_1", "must be > 0");
  if (!(price_server_2 > 0.0))
    throw ValidationError("prices.price_server_2", "must be > 0");
}

double time_increase(double t_no_seconds, double t_with_seconds) {
  if (!(t_no_seconds > 0.0))
    throw ValidationError("t_no_side", "baseline time must be > 0");
  return (t_with_seconds - t_no_seconds) / t_no_seconds;
}

CostBreakdown cost_savings(double t_no_seconds, double delta_t,
                           const std::vector<TaskWork>& work,
                           const PriceConfig& prices) {
  prices.validate();
  CostBreakdown cb;
  const double t_no_hours = t_no_seconds / 3600.0;
  cb.c_no_side = prices.price_server_1 * t_no_hours;
  cb.c_extra = delta_t * cb.c_no_side;
  for (const TaskWork& tw : work) {
    if (tw.work <= 0.0) continue;
    if (!tw.throughput_per_hour || !(*tw.throughput_per_hour > 0.0)) {
      throw ValidationError("tasks." + tw.id + ".reference_throughput",
                            "required for a task with nonzero work");
    }
    cb.c_side_tasks += prices.price_server_2 * (tw.work / *tw.throughput_per_hour);
  }
  if (!(cb.c_no_side > 0.0))
    throw ValidationError("t_no_side", "baseline cost must be > 0");
  cb.s = (cb.c_side_tasks - cb.c_extra) / cb.c_no_side;
  return cb;
}

namespace {

struct Interval {
  Tick start;
  Tick end;
};

// Lengths of `iv` clipped to bubble [bs, be).
Tick clip_len(const Interval& iv, Tick bs, Tick be) {
  const Tick s = std::max(iv.start, bs);
  const Tick e = std::min(iv.end, be);
  return e > s ? e - s : 0;
}

}  // namespace

std::vector<StageBreakdown> bubble_breakdown(const RunTrace& trace) {
  const PipelineConfig& pipe = trace.meta.config.pipeline;
  const int p = pipe.num_stages;
  std::vector<StageBreakdown> out(static_cast<std::size_t>(p));
  for (int s = 0; s < p; ++s) out[static_cast<std::size_t>(s)].stage = s;

  // Profiled memory per task, for the OOM classification.
  std::map<std::string, double> est_memory;
  for (const TaskProfile& tp : trace.meta.profiles) {
    est_memory[tp.task_id] = tp.est_memory;
  }

  // Per-worker serviceable timeline: +1 at assignment, -1 when a task
  // reaches STOPPED (completed or killed).
  std::vector<std::vector<std::pair<Tick, int>>> events(
      static_cast<std::size_t>(p));
  std::vector<std::set<std::string>> assigned_ever(static_cast<std::size_t>(p));
  for (const AssignRecord& a : trace.assigns) {
    events[static_cast<std::size_t>(a.worker)].push_back({a.t, +1});
    assigned_ever[static_cast<std::size_t>(a.worker)].insert(a.task);
  }
  for (const TransitionRecord& tr : trace.transitions) {
    if (tr.kind == TransitionKind::StopSideTask && tr.worker >= 0) {
      events[static_cast<std::size_t>(tr.worker)].push_back({tr.t, -1});
    }
  }
  for (auto& ev : events) std::sort(ev.begin(), ev.end());

  // Activities per worker, split into GPU-using work and runtime overhead.
  std::vector<std::vector<Interval>> used(static_cast<std::size_t>(p));
  std::vector<std::vector<Interval>> overhead(static_cast<std::size_t>(p));
  std::vector<std::vector<Interval>> busy(static_cast<std::size_t>(p));
  for (const ActivityRecord& a : trace.activities) {
    if (a.end <= a.start) continue;
    auto& bucket = (a.kind == ActivityKind::Step || a.kind == ActivityKind::Kernel)
                       ? used[static_cast<std::size_t>(a.worker)]
                       : overhead[static_cast<std::size_t>(a.worker)];
    bucket.push_back({a.start, a.end});
    busy[static_cast<std::size_t>(a.worker)].push_back({a.start, a.end});
  }
  for (int s = 0; s < p; ++s) {
    auto cmp = [](const Interval& a, const Interval& b) {
      return a.start < b.start;
    };
    std::sort(used[static_cast<std::size_t>(s)].begin(),
              used[static_cast<std::size_t>(s)].end(), cmp);
    std::sort(overhead[static_cast<std::size_t>(s)].begin(),
              overhead[static_cast<std::size_t>(s)].end(), cmp);
    std::sort(busy[static_cast<std::size_t>(s)].begin(),
              busy[static_cast<std::size_t>(s)].end(), cmp);
  }

  for (const Bubble& b : trace.bubbles) {
    const std::size_t s = static_cast<std::size_t>(b.stage);
    StageBreakdown& sb = out[s];
    const Tick bs = b.start;
    const Tick be = b.end();

    for (const Interval& iv : used[s]) sb.used_by_side_tasks += clip_len(iv, bs, be);
    for (const Interval& iv : overhead[s]) sb.runtime_overhead += clip_len(iv, bs, be);

    // Whether idle time could have been used: was any task memory-eligible
    // for this worker? With none ever assigned, the bubble's memory blocked
    // every candidate (vacuously), which is the OOM category.
    bool oom_stage = true;
    for (const std::string& id : assigned_ever[s]) {
      auto it = est_memory.find(id);
      const double est = it == est_memory.end() ? 0.0 : it->second;
      if (est < b.available_memory) {
        oom_stage = false;
        break;
      }
    }

    // Idle pieces: the bubble minus all activity, cut at serviceable-count
    // changes so each piece classifies uniformly.
    std::vector<Tick> cuts;
    cuts.push_back(bs);
    cuts.push_back(be);
    for (const Interval& iv : busy[s]) {
      if (iv.end > bs && iv.start < be) {
        cuts.push_back(std::clamp(iv.start, bs, be));
        cuts.push_back(std::clamp(iv.end, bs, be));
      }
    }
    for (const auto& [t, d] : events[s]) {
      if (t > bs && t < be) cuts.push_back(t);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      const Tick a = cuts[i];
      const Tick z = cuts[i + 1];
      bool covered = false;
      for (const Interval& iv : busy[s]) {
        if (iv.start <= a && iv.end >= z) {
          covered = true;
          break;
        }
      }
      if (covered) continue;
      int count = 0;
      for (const auto& [t, d] : events[s]) {
        if (t <= a) count += d;
      }
      if (count > 0) {
        sb.idle_insufficient_time += z - a;
      } else if (oom_stage) {
        sb.idle_oom += z - a;
      } else {
        sb.idle_insufficient_time += z - a;
      }
    }
  }
  return out;
}

MetricsReport build_report(const RunTrace& baseline, const RunTrace& treatment,
                           const PriceConfig& prices) {
  MetricsReport report;
  report.tick_seconds = treatment.meta.config.pipeline.tick_seconds;
  report.t_no_side = baseline.makespan_seconds();
  report.t_with_side = treatment.makespan_seconds();
  report.delta_t = time_increase(report.t_no_side, report.t_with_side);

  std::map<std::string, std::optional<double>> throughput;
  for (const SideTaskSpec& spec : treatment.meta.config.tasks) {
    throughput[spec.id] = spec.reference_throughput;
  }

  std::vector<TaskWork> work;
  for (const DispositionRecord& d : treatment.dispositions) {
    TaskOutcome outcome;
    outcome.id = d.task;
    outcome.disposition = d.disposition;
    outcome.work_done = d.steps_completed;
    outcome.worker = d.worker;
    report.tasks.push_back(outcome);
    work.push_back({d.task, static_cast<double>(d.steps_completed),
                    throughput[d.task]});
  }

  const CostBreakdown cb =
      cost_savings(report.t_no_side, report.delta_t, work, prices);
  report.c_no_side = cb.c_no_side;
  report.c_extra = cb.c_extra;
  report.c_side_tasks = cb.c_side_tasks;
  report.s = cb.s;

  Tick bubble_total = 0;
  for (const Bubble& b : baseline.bubbles) bubble_total += b.duration;
  const Tick wall = baseline.makespan;
  report.bubble_rate =
      wall > 0 ? static_cast<double>(bubble_total) /
                     (static_cast<double>(baseline.meta.config.pipeline.num_stages) *
                      static_cast<double>(wall))
               : 0.0;

  report.breakdown = bubble_breakdown(treatment);
  return report;
}

}  // namespace bubblesim
