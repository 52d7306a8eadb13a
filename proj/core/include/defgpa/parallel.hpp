#pragma once

#include <cstddef>
#include <functional>

namespace defgpa {

/// Worker count: DEFGPA_THREADS when set to a positive integer, otherwise the
/// hardware concurrency.
std::size_t thread_count();

/// Runs body(i) for i in [0, n) on up to thread_count() threads. Calls made
/// from inside a worker run serially. The exception of the lowest failing
/// index is rethrown after all iterations finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace defgpa
