#include "hk/util.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <thread>
#include <vector>

namespace hk {

std::uint64_t mix64(std::uint64_t v) {
  v += 0x9e3779b97f4a7c15ULL;
  v = (v ^ (v >> 30)) * 0xbf58476d1ce4e5b9ULL;
  v = (v ^ (v >> 27)) * 0x94d049bb133111ebULL;
  return v ^ (v >> 31);
}

std::uint64_t trial_seed(std::uint64_t seed, int n, int trial) {
  const std::uint64_t coords = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(n)) << 32) |
                               static_cast<std::uint32_t>(trial);
  return mix64(seed ^ mix64(coords));
}

int worker_count() {
  if (const char* env = std::getenv("HKLAB_WORKERS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

void parallel_for(int jobs, const std::function<void(int)>& fn, int workers) {
  if (jobs <= 0) return;
  if (workers <= 0) workers = worker_count();
  workers = std::min(workers, jobs);

  if (workers == 1) {
    for (int i = 0; i < jobs; ++i) fn(i);
    return;
  }

  std::vector<std::exception_ptr> errors(jobs);
  std::atomic<int> next{0};
  auto work = [&] {
    for (;;) {
      const int i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= jobs) return;
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& th : pool) th.join();

  for (const auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }
}

}  // namespace hk
