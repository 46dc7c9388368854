#pragma once

#include <cstddef>
#include <functional>

namespace jumpdens {

//! 0 maps to the number of hardware threads (at least 1).
unsigned resolve_threads(unsigned requested);

//! Runs body(i) for i in [0, count) on up to `threads` workers. Each index
//! must write only its own output slot; the exception thrown by the lowest
//! failing index, if any, is rethrown after all workers finish.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body);

} // namespace jumpdens
