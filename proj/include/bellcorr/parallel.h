#pragma once

#include <cstddef>
#include <functional>

namespace bellcorr {

/// Number of worker threads used by the batch kernels.
///
/// Read from the BELLCORR_THREADS environment variable; falls back to the
/// hardware concurrency when unset or unparsable. Always at least 1.
int worker_count();

/// Calls body(i) for every i in [0, count). Indices are split into
/// contiguous blocks, one per worker; body must only write to slots owned
/// by its index. Exceptions thrown by any worker are rethrown on the caller.
void parallel_for(size_t count, const std::function<void(size_t)> &body);

}  // namespace bellcorr
