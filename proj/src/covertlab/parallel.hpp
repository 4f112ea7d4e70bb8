#pragma once

#include <cstddef>
#include <functional>

namespace covert::detail {

/// Worker pool size: machine parallelism, capped by the COVERT_LAB_THREADS
/// environment variable when set.
int worker_count();

/// Runs fn(i) for i in [0, n). Work items are independent; each index is
/// executed exactly once, so index-addressed output slots make the result
/// independent of scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

/// Same with an explicit pool size (>= 1), ignoring the environment.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn,
                  int workers);

}  // namespace covert::detail
