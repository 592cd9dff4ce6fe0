#pragma once

#include <cstddef>
#include <functional>

namespace gff {

/// Worker count: GFF_WORKERS if set and positive, otherwise the hardware
/// concurrency.
unsigned worker_count();

/// Runs body(chunk) for chunk in [0, chunks) on up to worker_count()
/// threads. Chunks must write disjoint outputs; the first exception thrown
/// by any chunk is rethrown after all workers join.
void parallel_for(std::size_t chunks, const std::function<void(std::size_t)>& body);

}  // namespace gff
