#pragma once

#include <cstddef>
#include <functional>

namespace funcmodel {

/// Worker count: FUNCMODEL_THREADS if set and positive, otherwise the
/// hardware concurrency (at least 1).
unsigned worker_count();

/// Runs body(i) for i in [0, n). Iterations must be independent; results are
/// identical to the serial loop regardless of the worker count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace funcmodel
