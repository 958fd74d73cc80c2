#pragma once

#include <cstddef>
#include <functional>

namespace pclat {

/// Number of worker threads actually used when `jobs <= 0` is requested.
int default_jobs();

/// Run fn(0..n-1) on up to `jobs` threads. Cells must be independent; output
/// ordering is the caller's responsibility (write results by index). The
/// first exception escaping fn is rethrown after all workers finish.
void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn);

}  // namespace pclat
