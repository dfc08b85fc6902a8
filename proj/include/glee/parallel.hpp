#pragma once

#include <cstddef>
#include <functional>

namespace glee {

/// Caps the worker count used by parallel_for. 0 restores the hardware
/// default. Affects subsequent calls only.
void set_max_threads(int count);

int max_threads();

/// Runs fn(i) for i in [0, count) across up to max_threads() workers.
/// Iterations must be independent; exceptions propagate to the caller.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace glee
