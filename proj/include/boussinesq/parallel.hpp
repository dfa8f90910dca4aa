#pragma once

/// @file parallel.hpp
/// Minimal deterministic fork-join helper. Results are written by index, so
/// output never depends on the number of workers.

#include <cstddef>
#include <functional>

namespace bq {

/// Worker count: BOUSSINESQ_THREADS when set to a positive integer,
/// otherwise the number of hardware threads.
[[nodiscard]] unsigned worker_count();

/// Runs task(i) for i in [0, count) across the worker pool and rethrows the
/// first exception (lowest index) after all workers finish.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& task);

}  // namespace bq
