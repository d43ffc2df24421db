#pragma once

#include <functional>

namespace graphot {

/// GRAPHOT_JOBS if set to a positive integer, else the hardware thread count.
int default_jobs();

/// Runs body(i) for i in [0, count) on up to `jobs` threads. The first
/// exception thrown by any call is rethrown after all workers stop.
void parallel_for(int count, int jobs, const std::function<void(int)>& body);

}  // namespace graphot
