#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "bubblesim/types.hpp"

namespace bubblesim {

// One simulated training pipeline: p stages (one GPU each), m micro-batches
// per epoch, dependency-driven FP/BP operations under a 1F1B issue order.
struct PipelineConfig {
  int num_stages = 1;
  int num_micro_batches = 1;
  std::vector<Tick> fp_duration;  // size 1 (uniform) or num_stages
  std::vector<Tick> bp_duration;  // same rule
  int num_epochs = 1;
  double gpu_memory_total = 0.0;     // GiB per GPU
  std::vector<double> stage_memory;  // GiB held by pipeline training, per stage
  double tick_seconds = 0.001;

  Tick fp_ticks(int stage) const {
    return fp_duration.size() == 1 ? fp_duration[0] : fp_duration[stage];
  }
  Tick bp_ticks(int stage) const {
    return bp_duration.size() == 1 ? bp_duration[0] : bp_duration[stage];
  }
  // GPU memory left for side tasks on a stage while training runs.
  double available_memory(int stage) const {
    return gpu_memory_total - stage_memory[stage];
  }

  // Throws ValidationError naming the offending field.
  void validate() const;
};

enum class OpKind { FP, BP };

struct OpEvent {
  int stage = 0;
  OpKind kind = OpKind::FP;
  int micro_batch = 1;  // 1-based, in [1, m]
  int epoch = 0;
  Tick start = 0;
  Tick end = 0;
};

struct ScheduleTrace {
  std::vector<OpEvent> ops;  // ordered by (start, stage, end)
  std::vector<std::pair<Tick, Tick>> epoch_spans;
  PipelineConfig config;
};

enum class BubbleType { A, B, C };

// A maximal idle interval on one stage within one epoch span.
struct Bubble {
  int stage = 0;
  int epoch = 0;
  Tick start = 0;
  Tick duration = 0;
  double available_memory = 0.0;
  BubbleType btype = BubbleType::A;

  Tick end() const { return start + duration; }
};

// Per-stage 1F1B issue order: warm-up forwards, one-forward-one-backward
// steady state, backward drain. Single-stage pipelines run all forwards
// before all backwards (gradient accumulation, no inter-stage deps).
std::vector<std::pair<OpKind, int>> stage_issue_order(int stage, int num_stages,
                                                      int num_micro_batches);

// Earliest-start schedule under the issue order and FP/BP dependency rules.
// Deterministic; epochs are synchronous (epoch e+1 starts only after every
// op of epoch e finished).
ScheduleTrace build_schedule(const PipelineConfig& config);

// Every maximal idle interval inside an epoch span, classified:
//   - gap before a stage's first op or after its last op of the epoch: Type A
//   - mid-epoch gap whose following op is the stage's first BP: Type B
//   - any other mid-epoch gap: Type C
std::vector<Bubble> extract_bubbles(const ScheduleTrace& trace);

// Total bubble time over total pipeline GPU time (p x wall time), in [0, 1).
double bubble_rate(const ScheduleTrace& trace, const std::vector<Bubble>& bubbles);

// Default memory model: stage s holds weight_mem plus (p - s) in-flight
// micro-batch activations. Errors when stage 0 exceeds the GPU.
std::vector<double> default_stage_memory(int num_stages, double gpu_memory_total,
                                         double weight_mem,
                                         double activation_mem_per_microbatch);

const char* to_string(OpKind kind);
const char* to_string(BubbleType type);

namespace detail {

// Bubble plus the schedule ops that delimit it; the simulation engine uses
// the links to fire bubble start/end signals off actual op completions.
struct LinkedBubble {
  Bubble bubble;
  std::optional<std::size_t> prev_op;  // none: bubble leads the epoch
  std::optional<std::size_t> next_op;  // none: bubble trails the epoch
};

std::vector<LinkedBubble> extract_bubbles_linked(const ScheduleTrace& trace);

}  // namespace detail
}  // namespace bubblesim
