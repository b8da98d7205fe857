#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "bubblesim/limits.hpp"
#include "bubblesim/metrics.hpp"
#include "bubblesim/pipeline.hpp"
#include "bubblesim/task.hpp"

namespace bubblesim {

enum class GateEstimate { Mean, Max };

struct RuntimeOptions {
  Tick check_overhead = 1;  // per RunNextStep dispatch, charged as runtime
  Tick rpc_latency = 0;     // delay between issuing a transition and its effect
  double step_jitter = 0.0;
  int profile_steps = 32;
  GateEstimate gate_estimate = GateEstimate::Mean;

  void validate() const;
};

struct SweepGrid {
  std::vector<int> micro_batches;
  std::vector<std::string> model_sizes;
  std::vector<int> batch_sizes;

  void validate() const;
};

struct ExperimentConfig {
  PipelineConfig pipeline;
  std::vector<SideTaskSpec> tasks;
  LimitConfig limits;
  PriceConfig prices;
  RuntimeOptions runtime;
  std::optional<SweepGrid> sweep;
  std::uint64_t seed = 0;

  void validate() const;
};

// Parses a config document. Shape problems (missing keys, wrong types,
// unknown enum values) throw SchemaError; well-formed documents violating
// invariants throw ValidationError.
ExperimentConfig experiment_from_json(const nlohmann::json& doc);
ExperimentConfig load_experiment(const std::string& path);

// Round-trips the config for embedding in trace files. Deterministic output.
nlohmann::json experiment_to_json(const ExperimentConfig& config);

const char* to_string(GateEstimate estimate);

}  // namespace bubblesim
