#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <string>

namespace vanet {

/// Simulation time. Integer nanoseconds keep event ordering exact.
using SimTime = std::chrono::nanoseconds;

inline SimTime from_seconds(double seconds) {
  return SimTime{static_cast<std::int64_t>(std::llround(seconds * 1e9))};
}

inline double to_seconds(SimTime t) { return static_cast<double>(t.count()) / 1e9; }

/// Fixed 6-decimal rendering computed with integer arithmetic.
std::string format_seconds(SimTime t);

}  // namespace vanet
