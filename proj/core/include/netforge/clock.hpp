#pragma once

#include <chrono>

namespace netforge {

// Engines take explicit instants so tests can drive them with a fake clock.
using Instant = std::chrono::steady_clock::time_point;

inline Instant now_instant() { return std::chrono::steady_clock::now(); }

}  // namespace netforge
