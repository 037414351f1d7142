#include "satlab/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "satlab/config.hpp"

namespace satlab {

namespace {

std::size_t env_size(const char* name, std::size_t fallback) {
  const char* v = std::getenv(name);
  if (v == nullptr || *v == '\0') return fallback;
  try {
    const long long n = std::stoll(v);
    if (n > 0) return static_cast<std::size_t>(n);
  } catch (const std::exception&) {
  }
  return fallback;
}

}  // namespace

namespace config {

std::size_t class_cap() { return env_size("SATLAB_CAP", default_class_cap); }
std::size_t graph_cap() { return env_size("SATLAB_CAP", default_graph_cap); }

std::size_t worker_count() {
  const std::size_t hw = std::max<std::size_t>(1, std::thread::hardware_concurrency());
  return env_size("SATLAB_THREADS", hw);
}

}  // namespace config

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn, std::size_t workers) {
  if (workers == 0) workers = config::worker_count();
  workers = std::min(workers, n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr first;
  std::mutex mu;
  auto body = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n || failed.load()) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!first) first = std::current_exception();
        failed = true;
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(body);
  for (auto& t : pool) t.join();
  if (first) std::rethrow_exception(first);
}

}  // namespace satlab
