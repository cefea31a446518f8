#pragma once

#include <cstddef>
#include <functional>

namespace degen {

/// Number of workers actually used for a request (0 or negative = all cores).
int resolve_threads(int threads);

/// Runs fn(begin, end) over a static partition of [0, n) into contiguous
/// chunks, one per worker. Chunk boundaries depend only on (n, threads), so
/// per-index results land in deterministic slots regardless of scheduling.
void parallel_chunks(std::size_t n, int threads,
                     const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace degen
