#include "bubblesim/pipeline.hpp"

#include <algorithm>
#include <cstddef>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <tuple>

namespace bubblesim {

namespace {

void check_duration_list(const std::vector<Tick>& list, int num_stages,
                         const char* field) {
  if (list.size() != 1 && list.size() != static_cast<std::size_t>(num_stages)) {
    throw ValidationError(field, "override list must have one entry per stage");
  }
  for (Tick d : list) {
    if (d <= 0) throw ValidationError(field, "durations must be > 0");
  }
}

}  // namespace

void PipelineConfig::validate() const {
  if (num_stages < 1) throw ValidationError("num_stages", "must be >= 1");
  if (num_micro_batches < 1)
    throw ValidationError("num_micro_batches", "must be >= 1");
  if (num_epochs < 1) throw ValidationError("num_epochs", "must be >= 1");
  if (!(tick_seconds > 0.0)) throw ValidationError("tick_seconds", "must be > 0");
  if (fp_duration.empty()) throw ValidationError("fp_duration", "missing");
  if (bp_duration.empty()) throw ValidationError("bp_duration", "missing");
  check_duration_list(fp_duration, num_stages, "fp_duration");
  check_duration_list(bp_duration, num_stages, "bp_duration");
  if (gpu_memory_total < 0.0)
    throw ValidationError("gpu_memory_total", "must be >= 0");
  if (stage_memory.size() != static_cast<std::size_t>(num_stages))
    throw ValidationError("stage_memory", "must have one entry per stage");
  for (int s = 0; s < num_stages; ++s) {
    if (stage_memory[s] < 0.0)
      throw ValidationError("stage_memory", "entries must be >= 0");
    if (stage_memory[s] > gpu_memory_total)
      throw ValidationError("stage_memory",
                            "stage " + std::to_string(s) +
                                " exceeds gpu_memory_total");
  }
}

std::vector<std::pair<OpKind, int>> stage_issue_order(int stage, int num_stages,
                                                      int num_micro_batches) {
  const int m = num_micro_batches;
  std::vector<std::pair<OpKind, int>> order;
  order.reserve(static_cast<std::size_t>(2 * m));
  if (num_stages == 1) {
    // Single stage: all forwards accumulate before the backward pass.
    for (int i = 1; i <= m; ++i) order.emplace_back(OpKind::FP, i);
    for (int i = 1; i <= m; ++i) order.emplace_back(OpKind::BP, i);
    return order;
  }
  const int warmup = std::min(m, num_stages - stage);
  for (int i = 1; i <= warmup; ++i) order.emplace_back(OpKind::FP, i);
  int next_fp = warmup + 1;
  int next_bp = 1;
  while (next_fp <= m) {
    order.emplace_back(OpKind::BP, next_bp++);
    order.emplace_back(OpKind::FP, next_fp++);
  }
  while (next_bp <= m) order.emplace_back(OpKind::BP, next_bp++);
  return order;
}

ScheduleTrace build_schedule(const PipelineConfig& config) {
  config.validate();
  const int p = config.num_stages;
  const int m = config.num_micro_batches;
  const int epochs = config.num_epochs;

  struct Node {
    OpEvent op;
    Tick duration = 0;
    int deps = 0;
    std::vector<std::size_t> dependents;
  };
  std::vector<Node> nodes;
  nodes.reserve(static_cast<std::size_t>(2 * p * m * epochs));

  // key: (epoch, stage, kind, micro_batch)
  std::map<std::tuple<int, int, int, int>, std::size_t> index;
  for (int e = 0; e < epochs; ++e) {
    for (int s = 0; s < p; ++s) {
      for (auto [kind, mb] : stage_issue_order(s, p, m)) {
        Node n;
        n.op = OpEvent{s, kind, mb, e, 0, 0};
        n.duration = kind == OpKind::FP ? config.fp_ticks(s) : config.bp_ticks(s);
        index[{e, s, static_cast<int>(kind), mb}] = nodes.size();
        nodes.push_back(std::move(n));
      }
    }
  }

  auto add_edge = [&](std::size_t from, std::size_t to) {
    nodes[from].dependents.push_back(to);
    nodes[to].deps++;
  };

  // Same-stage chain across epochs plus cross-stage FP/BP dependencies. The
  // synchronous epoch boundary is implied: every op of epoch e+1 sits
  // transitively behind BP(stage 0, m) of epoch e, the last op to finish.
  std::vector<std::size_t> prev_on_stage(static_cast<std::size_t>(p),
                                         static_cast<std::size_t>(-1));
  for (int e = 0; e < epochs; ++e) {
    for (int s = 0; s < p; ++s) {
      for (auto [kind, mb] : stage_issue_order(s, p, m)) {
        const std::size_t id = index[{e, s, static_cast<int>(kind), mb}];
        if (prev_on_stage[s] != static_cast<std::size_t>(-1)) {
          add_edge(prev_on_stage[s], id);
        }
        prev_on_stage[s] = id;
        if (kind == OpKind::FP && s > 0) {
          add_edge(index[{e, s - 1, static_cast<int>(OpKind::FP), mb}], id);
        }
        if (kind == OpKind::BP) {
          if (s < p - 1) {
            add_edge(index[{e, s + 1, static_cast<int>(OpKind::BP), mb}], id);
          }
          add_edge(index[{e, s, static_cast<int>(OpKind::FP), mb}], id);
        }
      }
    }
  }
  // Earliest-start worklist over the DAG.
  std::vector<std::size_t> ready;
  std::vector<Tick> earliest(nodes.size(), 0);
  std::vector<int> deps_left(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    deps_left[i] = nodes[i].deps;
    if (deps_left[i] == 0) ready.push_back(i);
  }
  std::size_t processed = 0;
  while (!ready.empty()) {
    const std::size_t id = ready.back();
    ready.pop_back();
    processed++;
    Node& n = nodes[id];
    n.op.start = earliest[id];
    n.op.end = n.op.start + n.duration;
    for (std::size_t dep : n.dependents) {
      earliest[dep] = std::max(earliest[dep], n.op.end);
      if (--deps_left[dep] == 0) ready.push_back(dep);
    }
  }
  if (processed != nodes.size()) {
    throw std::logic_error("dependency cycle in pipeline schedule");
  }

  ScheduleTrace trace;
  trace.config = config;
  trace.ops.reserve(nodes.size());
  for (const Node& n : nodes) trace.ops.push_back(n.op);
  std::sort(trace.ops.begin(), trace.ops.end(),
            [](const OpEvent& a, const OpEvent& b) {
              return std::tie(a.start, a.stage, a.end, a.micro_batch) <
                     std::tie(b.start, b.stage, b.end, b.micro_batch);
            });

  trace.epoch_spans.assign(static_cast<std::size_t>(epochs),
                           {std::numeric_limits<Tick>::max(), 0});
  for (const OpEvent& op : trace.ops) {
    auto& span = trace.epoch_spans[static_cast<std::size_t>(op.epoch)];
    span.first = std::min(span.first, op.start);
    span.second = std::max(span.second, op.end);
  }
  return trace;
}

namespace detail {

std::vector<LinkedBubble> extract_bubbles_linked(const ScheduleTrace& trace) {
  const PipelineConfig& cfg = trace.config;
  const int p = cfg.num_stages;
  std::vector<LinkedBubble> out;

  // Per (epoch, stage) op indices into trace.ops, already time-sorted.
  std::vector<std::vector<std::vector<std::size_t>>> by_epoch_stage(
      static_cast<std::size_t>(cfg.num_epochs),
      std::vector<std::vector<std::size_t>>(static_cast<std::size_t>(p)));
  for (std::size_t i = 0; i < trace.ops.size(); ++i) {
    const OpEvent& op = trace.ops[i];
    by_epoch_stage[static_cast<std::size_t>(op.epoch)]
                  [static_cast<std::size_t>(op.stage)]
                      .push_back(i);
  }

  for (int e = 0; e < cfg.num_epochs; ++e) {
    const auto [span_start, span_end] =
        trace.epoch_spans[static_cast<std::size_t>(e)];
    for (int s = 0; s < p; ++s) {
      const auto& ops = by_epoch_stage[static_cast<std::size_t>(e)]
                                      [static_cast<std::size_t>(s)];
      // First BP of this stage's epoch marks Type-B gaps.
      std::size_t first_bp = static_cast<std::size_t>(-1);
      for (std::size_t i : ops) {
        if (trace.ops[i].kind == OpKind::BP) {
          first_bp = i;
          break;
        }
      }
      const double avail = cfg.available_memory(s);
      auto emit = [&](Tick start, Tick end, BubbleType type,
                      std::optional<std::size_t> prev,
                      std::optional<std::size_t> next) {
        if (end <= start) return;
        LinkedBubble lb;
        lb.bubble = Bubble{s, e, start, end - start, avail, type};
        lb.prev_op = prev;
        lb.next_op = next;
        out.push_back(std::move(lb));
      };

      Tick cursor = span_start;
      std::optional<std::size_t> prev;
      for (std::size_t i : ops) {
        const OpEvent& op = trace.ops[i];
        if (op.start > cursor) {
          BubbleType type;
          if (!prev) {
            type = BubbleType::A;  // leading gap of the epoch
          } else if (i == first_bp) {
            type = BubbleType::B;
          } else {
            type = BubbleType::C;
          }
          emit(cursor, op.start, type, prev, i);
        }
        cursor = op.end;
        prev = i;
      }
      emit(cursor, span_end, BubbleType::A, prev, std::nullopt);
    }
  }

  std::sort(out.begin(), out.end(), [](const LinkedBubble& a, const LinkedBubble& b) {
    return std::tie(a.bubble.start, a.bubble.stage) <
           std::tie(b.bubble.start, b.bubble.stage);
  });
  return out;
}

}  // namespace detail

std::vector<Bubble> extract_bubbles(const ScheduleTrace& trace) {
  std::vector<Bubble> out;
  for (const auto& lb : detail::extract_bubbles_linked(trace)) {
    out.push_back(lb.bubble);
  }
  return out;
}

double bubble_rate(const ScheduleTrace& trace, const std::vector<Bubble>& bubbles) {
  if (trace.ops.empty()) return 0.0;
  Tick first = trace.ops.front().start;
  Tick last = 0;
  for (const OpEvent& op : trace.ops) {
    first = std::min(first, op.start);
    last = std::max(last, op.end);
  }
  const Tick wall = last - first;
  if (wall <= 0) return 0.0;
  Tick total = 0;
  for (const Bubble& b : bubbles) total += b.duration;
  return static_cast<double>(total) /
         (static_cast<double>(trace.config.num_stages) * static_cast<double>(wall));
}

std::vector<double> default_stage_memory(int num_stages, double gpu_memory_total,
                                         double weight_mem,
                                         double activation_mem_per_microbatch) {
  if (num_stages < 1) throw ValidationError("num_stages", "must be >= 1");
  if (gpu_memory_total < 0 || weight_mem < 0 || activation_mem_per_microbatch < 0)
    throw ValidationError("memory_model", "inputs must be >= 0");
  const double peak = weight_mem + num_stages * activation_mem_per_microbatch;
  if (peak > gpu_memory_total) {
    throw ValidationError("memory_model",
                          "infeasible: weight_mem + p * activation_mem (" +
                              std::to_string(peak) + ") exceeds gpu_memory_total (" +
                              std::to_string(gpu_memory_total) + ")");
  }
  std::vector<double> mem(static_cast<std::size_t>(num_stages));
  for (int s = 0; s < num_stages; ++s) {
    const double v = weight_mem + (num_stages - s) * activation_mem_per_microbatch;
    mem[static_cast<std::size_t>(s)] = std::min(v, gpu_memory_total);
  }
  return mem;
}

const char* to_string(OpKind kind) {
  return kind == OpKind::FP ? "fp" : "bp";
}

const char* to_string(BubbleType type) {
  switch (type) {
    case BubbleType::A: return "A";
    case BubbleType::B: return "B";
    case BubbleType::C: return "C";
  }
  return "?";
}

}  // namespace bubblesim
