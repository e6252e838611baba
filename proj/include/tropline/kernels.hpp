#pragma once

// Data-parallel kernels. Each kernel has a serial reference implementation
// and an OpenMP variant; both must return identical results.

#include <array>
#include <optional>

#include "tropline/metric.hpp"

namespace tropline {

enum class Execution { Serial, Parallel };

/// Thread cap from TROPLINE_THREADS, or the OpenMP default when unset.
int configured_threads();
/// Applies configured_threads() to the OpenMP runtime.
void apply_thread_cap();

std::optional<std::array<int, 3>> three_point_violation_serial(const UltraVector& u);
std::optional<std::array<int, 3>> three_point_violation_parallel(const UltraVector& u);

}  // namespace tropline
