#include "pucci/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace pucci {

std::size_t thread_count() {
  std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("PUCCI_LAB_THREADS")) {
    try {
      long cap = std::stol(env);
      if (cap >= 1) hw = std::min<std::size_t>(hw, static_cast<std::size_t>(cap));
    } catch (...) {
      // unparsable value: ignore the cap
    }
  }
  return hw;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body) {
  constexpr std::size_t kMinChunk = 2048;
  const std::size_t workers = std::min(thread_count(), (n + kMinChunk - 1) / kMinChunk);
  if (workers <= 1) {
    if (n > 0) body(0, n);
    return;
  }
  const std::size_t chunk = (n + workers - 1) / workers;
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(n, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&body, begin, end] { body(begin, end); });
  }
}

}  // namespace pucci
