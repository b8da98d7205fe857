#include "bubblesim/limits.hpp"

namespace bubblesim {

void LimitConfig::validate() const {
  if (grace_period <= 0) throw ValidationError("limits.grace_period", "must be > 0");
  if (memory_headroom < 0.0)
    throw ValidationError("limits.memory_headroom", "must be >= 0");
  if (reclamation_delay < 0)
    throw ValidationError("limits.reclamation_delay", "must be >= 0");
}

MemCheck check_memory(double memory_allocated, double limit) {
  return memory_allocated > limit ? MemCheck::OomKill : MemCheck::Ok;
}

Gate program_directed_gate(double remaining_seconds, double est_step_seconds) {
  return remaining_seconds > est_step_seconds ? Gate::Run : Gate::Yield;
}

Enforce framework_enforce(std::optional<Tick> last_paused, Tick pause_issued_at,
                          Tick now, Tick grace_period) {
  if (now < pause_issued_at + grace_period) return Enforce::Ok;
  if (last_paused && *last_paused >= pause_issued_at) return Enforce::Ok;
  return Enforce::Kill;
}

}  // namespace bubblesim
