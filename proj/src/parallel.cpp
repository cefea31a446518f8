#include <degen/parallel.hpp>

#include <algorithm>
#include <thread>
#include <vector>

namespace degen {

int resolve_threads(int threads) {
  if (threads > 0) return threads;
  unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? static_cast<int>(hc) : 1;
}

void parallel_chunks(std::size_t n, int threads,
                     const std::function<void(std::size_t, std::size_t)>& fn) {
  if (n == 0) return;
  std::size_t nworkers = static_cast<std::size_t>(resolve_threads(threads));
  nworkers = std::min(nworkers, n);
  if (nworkers <= 1) {
    fn(0, n);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(nworkers);
  std::size_t chunk = (n + nworkers - 1) / nworkers;
  for (std::size_t w = 0; w < nworkers; ++w) {
    std::size_t begin = w * chunk;
    std::size_t end = std::min(n, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back(fn, begin, end);
  }
  for (auto& t : pool) t.join();
}

}  // namespace degen
