#include "bubblesim/profiler.hpp"

#include <algorithm>
#include <cmath>

namespace bubblesim {

namespace {

// splitmix64; stable across platforms, unlike std::hash.
std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(const char* data, std::size_t len) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (std::size_t i = 0; i < len; ++i) {
    h ^= static_cast<unsigned char>(data[i]);
    h *= 0x100000001b3ull;
  }
  return h;
}

double next_unit(std::uint64_t& state) {
  state = mix64(state);
  return static_cast<double>(state >> 11) * (1.0 / 9007199254740992.0);
}

}  // namespace

std::uint64_t stream_seed(std::uint64_t seed, const std::string& task_id,
                          const char* salt) {
  std::uint64_t h = mix64(seed);
  h ^= fnv1a(task_id.data(), task_id.size());
  h = mix64(h);
  h ^= fnv1a(salt, std::char_traits<char>::length(salt));
  return mix64(h);
}

Tick jittered_step_ticks(Tick base, double jitter, std::uint64_t& rng_state) {
  if (jitter <= 0.0) return base;
  const double mult = 1.0 - jitter + 2.0 * jitter * next_unit(rng_state);
  const Tick t = static_cast<Tick>(std::llround(static_cast<double>(base) * mult));
  return std::max<Tick>(1, t);
}

TaskProfile profile_task(const SideTaskSpec& spec, const ProfileOptions& opts,
                         std::uint64_t seed) {
  TaskProfile profile;
  profile.task_id = spec.id;
  profile.profiled_steps = opts.n_steps;

  std::uint64_t rng = stream_seed(seed, spec.id, "profile");
  Tick total_busy = 0;
  Tick max_step = 0;
  for (int i = 0; i < opts.n_steps; ++i) {
    const Tick d = jittered_step_ticks(spec.per_step_duration, opts.step_jitter, rng);
    total_busy += d;
    max_step = std::max(max_step, d);
  }

  if (spec.interface_kind == TaskInterface::Iterative) {
    profile.est_per_step_duration =
        ticks_to_seconds(total_busy, opts.tick_seconds) / opts.n_steps;
    profile.max_per_step_duration = ticks_to_seconds(max_step, opts.tick_seconds);
  }

  double peak = spec.memory_demand;
  if (spec.misbehavior.kind == MisbehaviorKind::MemoryLeak) {
    peak += spec.misbehavior.leak_rate_gib_per_s *
            ticks_to_seconds(total_busy, opts.tick_seconds);
  }
  profile.est_memory = peak;
  return profile;
}

BubbleProfile profile_bubbles(const PipelineConfig& config) {
  PipelineConfig one_epoch = config;
  one_epoch.num_epochs = 1;
  const ScheduleTrace trace = build_schedule(one_epoch);
  const std::vector<Bubble> bubbles = extract_bubbles(trace);

  BubbleProfile profile;
  profile.stages.resize(static_cast<std::size_t>(config.num_stages));
  for (int s = 0; s < config.num_stages; ++s) {
    profile.stages[static_cast<std::size_t>(s)].available_memory =
        config.available_memory(s);
  }
  for (const Bubble& b : bubbles) {
    profile.stages[static_cast<std::size_t>(b.stage)].durations.push_back(
        b.duration);
  }
  for (auto& stage : profile.stages) {
    std::sort(stage.durations.begin(), stage.durations.end());
  }
  profile.rate = bubble_rate(trace, bubbles);
  return profile;
}

}  // namespace bubblesim
