#include "fks/spectral/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "fks/error.hpp"

namespace fks::spectral {

namespace {
std::atomic<int> g_threads{1};
}

void set_thread_count(int n) {
  if (n < 1) throw Error(ErrorKind::domain, "thread count must be >= 1");
  g_threads.store(n);
}

int thread_count() { return g_threads.load(); }

void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body) {
  const std::size_t t = std::min<std::size_t>(static_cast<std::size_t>(thread_count()), n);
  if (t <= 1 || n < 1024) {
    body(0, n);
    return;
  }
  std::vector<std::thread> pool;
  std::exception_ptr first;
  std::mutex mu;
  const std::size_t chunk = (n + t - 1) / t;
  for (std::size_t i = 0; i < t; ++i) {
    const std::size_t b = i * chunk, e = std::min(n, b + chunk);
    if (b >= e) break;
    pool.emplace_back([&, b, e] {
      try {
        body(b, e);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!first) first = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first) std::rethrow_exception(first);
}

}  // namespace fks::spectral
