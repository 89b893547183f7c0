#pragma once

#include <cstddef>
#include <functional>

namespace lvlab {

// Worker cap shared by all modules. 0 means "use LVLAB_THREADS or hardware".
void set_thread_count(unsigned n);
unsigned thread_count();

// Runs body(i) for i in [0, n). Each index is processed exactly once; callers
// write results into per-index slots and reduce serially afterwards, which
// keeps output independent of the worker count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace lvlab
