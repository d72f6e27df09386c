#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "gridmaint/solver.hpp"

namespace gridmaint {

// Runs fn(i, backend) for i in [0, n) on up to `threads` workers. Each worker
// owns one backend; the first exception is rethrown after all workers join.
template <class Fn>
void parallel_for(int n, int threads, Fn&& fn) {
  if (n <= 0) return;
  const int w = std::max(1, std::min(threads, n));
  if (w == 1) {
    auto be = make_default_backend();
    for (int i = 0; i < n; ++i) fn(i, *be);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr err;
  std::mutex mu;
  {
    std::vector<std::jthread> pool;
    for (int j = 0; j < w; ++j)
      pool.emplace_back([&] {
        auto be = make_default_backend();
        for (int i = next++; i < n; i = next++) {
          try {
            fn(i, *be);
          } catch (...) {
            std::lock_guard lk(mu);
            if (!err) err = std::current_exception();
            next = n;
          }
        }
      });
  }
  if (err) std::rethrow_exception(err);
}

}  // namespace gridmaint
