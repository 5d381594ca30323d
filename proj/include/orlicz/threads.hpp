#ifndef ORLICZ_THREADS_HPP
#define ORLICZ_THREADS_HPP

#include <cstddef>
#include <functional>

namespace orlicz {

/// Global worker count used by the evaluation loops. Results never depend
/// on this value; it only controls wall time.
void set_threads(int n);
int threads();

/// Runs fn(i) for i in [0, n). Each index is processed exactly once; the
/// caller is responsible for writing to disjoint slots. Loops shorter than
/// min_parallel run inline, where spawn cost would dominate the row work.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn,
                  std::size_t min_parallel = 96);

/// Marks the current thread as a pool worker so nested loops stay serial.
struct WorkerScope {
  WorkerScope();
  ~WorkerScope();
};

}  // namespace orlicz

#endif
