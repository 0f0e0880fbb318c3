#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace yamabe {

/// Worker cap: YAMABE_LAB_THREADS if set and positive, otherwise the
/// hardware concurrency (at least 1).
unsigned thread_limit();

/// Runs body(i) for i in [0, count), split into contiguous chunks across at
/// most thread_limit() threads. body must only write to slot i.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

/// Pairwise (cascade) summation. The split points depend only on the input
/// length, so the result is bit-identical across runs and thread counts.
double pairwise_sum(std::span<const double> values);

}  // namespace yamabe
