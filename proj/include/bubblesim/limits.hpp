#pragma once

#include <optional>

#include "bubblesim/types.hpp"

namespace bubblesim {

struct LimitConfig {
  Tick grace_period = 100;        // ticks; default 0.1 s at the 1 ms tick
  double memory_headroom = 0.0;   // GiB added to the profiled estimate
  Tick reclamation_delay = 0;     // memory release delay after a kill/stop

  void validate() const;
};

enum class MemCheck { Ok, OomKill };

// Strict exceedance kills: allocation exactly at the limit is fine.
MemCheck check_memory(double memory_allocated, double limit);

enum class Gate { Run, Yield };

// The program-directed mechanism: run the next step only when the remaining
// bubble time strictly exceeds the estimated per-step duration.
Gate program_directed_gate(double remaining_seconds, double est_step_seconds);

enum class Enforce { Ok, Kill };

// The framework-enforced mechanism, evaluated one grace period after a pause
// was issued: kill unless the task's last-paused timestamp was updated since
// the pause began. Also used for over-running initialization, with the init
// completion time standing in for last_paused.
Enforce framework_enforce(std::optional<Tick> last_paused, Tick pause_issued_at,
                          Tick now, Tick grace_period);

}  // namespace bubblesim
