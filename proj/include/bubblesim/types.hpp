#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace bubblesim {

// Simulated time is an integer tick count. The tick size in seconds is part
// of the experiment configuration (default 1 ms); every configured duration
// must be a whole number of ticks so event ordering never depends on
// floating-point comparisons.
using Tick = std::int64_t;

inline double ticks_to_seconds(Tick t, double tick_seconds) {
  return static_cast<double>(t) * tick_seconds;
}

// A config value that violates a documented invariant. `field()` names the
// offending config field so the CLI can report it (exit code 1).
class ValidationError : public std::runtime_error {
 public:
  ValidationError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

// A config document that does not match the schema (wrong type, missing
// required key, unknown enum value). Maps to CLI exit code 2.
class SchemaError : public std::runtime_error {
 public:
  SchemaError(std::string path, const std::string& message)
      : std::runtime_error(path + ": " + message), path_(std::move(path)) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

inline Tick seconds_to_ticks(double seconds, double tick_seconds,
                             const std::string& field) {
  if (!(tick_seconds > 0.0)) {
    throw ValidationError("tick_seconds", "must be > 0");
  }
  const double ratio = seconds / tick_seconds;
  const double rounded = std::round(ratio);
  if (std::abs(ratio - rounded) > 1e-6) {
    throw ValidationError(
        field, "duration " + std::to_string(seconds) +
                   " is not a whole number of ticks (tick_seconds=" +
                   std::to_string(tick_seconds) + ")");
  }
  return static_cast<Tick>(rounded);
}

}  // namespace bubblesim
