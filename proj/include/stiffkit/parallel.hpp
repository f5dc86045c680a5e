#pragma once

#include <cstddef>
#include <functional>

namespace stiffkit {

/// Number of worker threads: `requested` when positive, else hardware concurrency.
unsigned resolve_threads(int requested);

/// Runs body(begin, end, worker) over contiguous chunks of [0, n).
/// Chunking depends only on n and the thread count; callers that merge
/// per-index results get output independent of scheduling.
void parallel_chunks(std::size_t n, unsigned threads,
                     const std::function<void(std::size_t, std::size_t, unsigned)>& body);

}  // namespace stiffkit
