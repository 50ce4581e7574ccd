#pragma once

#include <cstddef>
#include <functional>

namespace gaussmod {

/// Threads to use for `jobs` independent tasks: GAUSSMOD_THREADS when set to
/// a positive integer, otherwise the hardware concurrency; never more than
/// `jobs`.
std::size_t worker_count(std::size_t jobs);

/// Runs body(i) for i in [0, n). Callers write into slot i of a preallocated
/// container, so results come out in index order. If any call throws, the
/// exception from the lowest index is rethrown after all workers stop.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace gaussmod
