#pragma once

#include <cstddef>
#include <functional>

namespace graphonlab {

/// Worker count used by internally parallel loops. Results never depend on it.
void set_thread_count(unsigned threads);
unsigned thread_count();

/// Runs body(chunk) for chunk in [0, chunks), spread over thread_count() workers.
/// Callers write into per-chunk slots and reduce afterwards in index order.
void parallel_for(std::size_t chunks, const std::function<void(std::size_t)>& body);

}  // namespace graphonlab
