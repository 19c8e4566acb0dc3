#include "pcqg/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace pcqg {

unsigned worker_count() {
  if (const char* env = std::getenv("PCQG_THREADS")) {
    try {
      int n = std::stoi(env);
      if (n >= 1) return static_cast<unsigned>(n);
    } catch (const std::exception&) {
    }
  }
  unsigned h = std::thread::hardware_concurrency();
  return h == 0 ? 1 : h;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  unsigned k = std::min<std::size_t>(worker_count(), n);
  if (k <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::mutex mu;
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < n;) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> g(mu);
        if (!err) err = std::current_exception();
      }
    }
  };
  std::vector<std::thread> ts;
  for (unsigned t = 0; t < k; ++t) ts.emplace_back(work);
  for (auto& t : ts) t.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace pcqg
