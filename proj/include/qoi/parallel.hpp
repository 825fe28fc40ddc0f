#pragma once

#include <cstddef>
#include <functional>

namespace qoi {

/// Number of worker threads the library may use. Reads QOI_THREADS
/// (positive integer); otherwise the hardware concurrency, at least 1.
std::size_t worker_count();

/// Runs body(begin, end) over a partition of [0, n) into contiguous chunks,
/// one chunk per worker. Chunk k always covers the k-th slice, so callers can
/// merge per-chunk results in chunk order and stay deterministic.
void parallel_chunks(std::size_t n, std::size_t chunks,
                     const std::function<void(std::size_t chunk, std::size_t begin,
                                              std::size_t end)>& body);

}  // namespace qoi
