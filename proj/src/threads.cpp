#include "orlicz/threads.hpp"

#include <atomic>
#include <thread>
#include <vector>

namespace orlicz {

namespace {
int g_threads = 1;
thread_local bool t_in_worker = false;
}  // namespace

void set_threads(int n) { g_threads = n < 1 ? 1 : n; }

int threads() { return g_threads; }

WorkerScope::WorkerScope() { t_in_worker = true; }
WorkerScope::~WorkerScope() { t_in_worker = false; }

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn,
                  std::size_t min_parallel)
{
  const int nt = t_in_worker ? 1 : g_threads;
  if (nt <= 1 || n < std::max<std::size_t>(2, min_parallel)) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto work = [&]() {
    WorkerScope scope;
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) break;
      fn(i);
    }
  };
  std::vector<std::thread> pool;
  const std::size_t count = std::min<std::size_t>(static_cast<std::size_t>(nt), n);
  pool.reserve(count);
  for (std::size_t t = 0; t < count; ++t) pool.emplace_back(work);
  for (auto& th : pool) th.join();
}

}  // namespace orlicz
