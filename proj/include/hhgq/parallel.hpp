#pragma once

#include <cstddef>
#include <functional>

namespace hhgq {

/// Upper bound on worker threads used by the computational routines.
/// 0 means "use std::thread::hardware_concurrency()".
void set_thread_limit(unsigned n);
unsigned thread_limit();

/// Runs body(i) for i in [0, n). Each index is visited exactly once; callers
/// write to per-index slots and reduce afterwards in index order, so results do
/// not depend on the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace hhgq
