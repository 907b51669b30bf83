#pragma once

// Minimal static-partition thread pool. Work is split into contiguous chunks
// by index; reductions are left to the caller, who combines per-index results
// in index order so that output does not depend on the thread count.

#include <cstddef>
#include <functional>

namespace dsqg {

/// Number of worker threads used by parallel_for (default: hardware
/// concurrency, at least 1).
unsigned thread_count() noexcept;
void set_thread_count(unsigned n) noexcept;

/// Calls body(i) for i in [0, n). The first exception thrown (lowest chunk)
/// is rethrown after all workers have joined.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace dsqg
