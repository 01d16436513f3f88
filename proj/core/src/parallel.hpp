#pragma once

#include <algorithm>
#include <thread>
#include <vector>

namespace fracdiff::detail {

// Runs body(i) for i in [0, n), split into contiguous chunks over `workers`
// threads. body must only write state owned by index i.
template <class Body>
void parallel_for(int n, int workers, Body&& body) {
  workers = std::clamp(workers, 1, std::max(n, 1));
  if (workers == 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> threads;
  threads.reserve(static_cast<std::size_t>(workers));
  const int chunk = (n + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const int begin = w * chunk;
    const int end = std::min(n, begin + chunk);
    if (begin >= end) break;
    threads.emplace_back([&body, begin, end] {
      for (int i = begin; i < end; ++i) body(i);
    });
  }
  for (auto& t : threads) t.join();
}

}  // namespace fracdiff::detail
