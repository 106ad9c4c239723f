#include "hhgq/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace hhgq {

namespace {
std::atomic<unsigned> g_thread_limit{0};
thread_local bool t_inside_region = false;

struct RegionGuard {
  bool previous = t_inside_region;
  RegionGuard() { t_inside_region = true; }
  ~RegionGuard() { t_inside_region = previous; }
};
}  // namespace

void set_thread_limit(unsigned n) { g_thread_limit.store(n); }

unsigned thread_limit() {
  unsigned n = g_thread_limit.load();
  if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
  return n;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  // Nested regions run serially on the calling worker.
  const std::size_t workers = t_inside_region ? 1 : std::min<std::size_t>(thread_limit(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto run = [&] {
    RegionGuard guard;
    for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(n);
      }
    }
  };

  std::vector<std::jthread> pool;
  pool.reserve(workers - 1);
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(run);
  run();
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace hhgq
