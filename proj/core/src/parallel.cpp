#include "chromatic/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <thread>
#include <vector>

namespace chromatic {

int worker_count() {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw <= 0) hw = 1;
  if (const char* env = std::getenv("CHROMATIC_TILER_THREADS")) {
    int cap = std::atoi(env);
    if (cap >= 1 && cap < hw) hw = cap;
    if (cap >= 1 && cap >= hw) hw = cap;  // allow oversubscription if asked
  }
  return hw;
}

void parallel_for(int64_t count, const std::function<void(int64_t)>& fn) {
  if (count <= 0) return;
  int workers = worker_count();
  if (workers > count) workers = static_cast<int>(count);
  if (workers <= 1) {
    for (int64_t i = 0; i < count; ++i) fn(i);
    return;
  }
  // Dynamic chunking: the assignment of indices to threads varies, but each
  // index writes only its own output, so results do not depend on it.
  std::atomic<int64_t> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  const int64_t chunk = std::max<int64_t>(1, count / (workers * 8));
  auto body = [&]() {
    for (;;) {
      int64_t begin = next.fetch_add(chunk);
      if (begin >= count || failed.load()) return;
      int64_t end = std::min(begin + chunk, count);
      try {
        for (int64_t i = begin; i < end; ++i) fn(i);
      } catch (...) {
        if (!failed.exchange(true)) error = std::current_exception();
        return;
      }
    }
  };
  pool.reserve(workers);
  for (int t = 0; t < workers; ++t) pool.emplace_back(body);
  for (auto& th : pool) th.join();
  if (failed.load() && error) std::rethrow_exception(error);
}

}  // namespace chromatic
