#pragma once

#include <cstddef>
#include <functional>

namespace graphlim {

// Worker cap shared by every parallel loop in the library. Results never
// depend on it: each index owns its own random stream and output slot.
void set_max_threads(unsigned n);
unsigned max_threads();

// Runs body(i) for i in [0, n). Exceptions from workers are rethrown on the
// calling thread (first one by index wins).
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace graphlim
