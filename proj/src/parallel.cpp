#include "lorentz/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace lorentz {

unsigned thread_budget() {
  if (const char* env = std::getenv("LORENTZ_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v >= 1) return static_cast<unsigned>(std::min(v, 256L));
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1u : hw;
}

void parallel_chunks(std::size_t n,
                     const std::function<void(std::size_t, std::size_t)>& body) {
  if (n == 0) return;
  const std::size_t kMinChunk = 4096;  // below this, threads cost more than they save
  unsigned budget = thread_budget();
  std::size_t chunks = std::min<std::size_t>(budget, (n + kMinChunk - 1) / kMinChunk);
  if (chunks <= 1) {
    body(0, n);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(chunks);
  std::size_t base = n / chunks, extra = n % chunks, begin = 0;
  for (std::size_t c = 0; c < chunks; ++c) {
    std::size_t len = base + (c < extra ? 1 : 0);
    pool.emplace_back(body, begin, begin + len);
    begin += len;
  }
  for (auto& t : pool) t.join();
}

}  // namespace lorentz
