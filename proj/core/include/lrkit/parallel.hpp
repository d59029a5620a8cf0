#pragma once

#include <cstddef>
#include <functional>

namespace lrkit {

/// Runs body(i) for i in [0, count) on a small worker pool. Work is split by
/// index into contiguous blocks, so each index lands in exactly one task and
/// results written per index are identical for every thread count.
/// threads == 0 picks the hardware concurrency.
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& body);

}  // namespace lrkit
