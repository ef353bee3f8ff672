#pragma once

#include <cstddef>
#include <functional>
#include <optional>

namespace rlab::harness {

/// Worker count: `requested` if nonzero, else RLAB_THREADS, else the
/// hardware concurrency (at least 1).
unsigned resolve_threads(std::optional<unsigned> requested);

/// Calls task(i) for i in [0, count) on `threads` workers pulling indices
/// from a shared counter. Results must be written to per-index slots; the
/// caller folds them in index order. The exception of the lowest failing
/// index is rethrown after all workers stop.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& task);

}  // namespace rlab::harness
