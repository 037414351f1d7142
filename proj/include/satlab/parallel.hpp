#ifndef SATLAB_PARALLEL_HPP_
#define SATLAB_PARALLEL_HPP_

#include <cstddef>
#include <functional>

namespace satlab {

// Runs fn(0..n-1) on a small pool. Items are claimed in index order; the
// first exception thrown by any item is rethrown after all workers stop.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn, std::size_t workers = 0);

}  // namespace satlab

#endif  // SATLAB_PARALLEL_HPP_
