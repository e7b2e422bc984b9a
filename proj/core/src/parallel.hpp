#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace widthkit::detail {

/// Calls fn(begin, end) on contiguous chunks of [0, n), one thread per chunk.
template <class Fn>
void parallel_chunks(std::size_t n, unsigned jobs, Fn&& fn) {
  jobs = static_cast<unsigned>(std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(n, 1)));
  if (jobs == 1) {
    fn(std::size_t{0}, n);
    return;
  }
  std::vector<std::thread> pool;
  const std::size_t chunk = (n + jobs - 1) / jobs;
  for (unsigned j = 0; j < jobs; ++j) {
    const std::size_t b = j * chunk, e = std::min(n, b + chunk);
    if (b < e) pool.emplace_back([&fn, b, e] { fn(b, e); });
  }
  for (auto& th : pool) th.join();
}

}  // namespace widthkit::detail
