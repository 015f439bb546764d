#pragma once

#include <cstddef>
#include <functional>

namespace vdmlab {

/// Worker cap for library-internal parallel loops; 0 restores the default
/// (hardware concurrency).
void set_thread_count(int n);
int thread_count();

/// Calls fn(i) for i in [0, n) on up to thread_count() threads. Results must
/// be written by index so the outcome does not depend on scheduling. The first
/// exception thrown by any call is rethrown after all workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace vdmlab
