#pragma once

#include <algorithm>
#include <functional>
#include <thread>
#include <vector>

namespace vlasov1d {

/// Static-partition parallel map over an index range. Each index is touched by
/// exactly one thread and the partition depends only on (count, threads), so
/// any per-index computation gives identical results for every thread count.
class Executor {
 public:
  explicit Executor(int threads = 1) : threads_(std::max(1, threads)) {}

  [[nodiscard]] int threads() const noexcept { return threads_; }

  template <typename Fn>
  void for_each_index(int count, Fn&& fn) const {
    for_each_index_with_worker(count, [&fn](int k, int) { fn(k); });
  }

  /// Worker-indexed variant: fn(k, worker) lets callers keep per-thread scratch.
  template <typename Fn>
  void for_each_index_with_worker(int count, Fn&& fn) const {
    const int workers = std::min(threads_, count);
    if (workers <= 1) {
      for (int k = 0; k < count; ++k) fn(k, 0);
      return;
    }
    std::vector<std::jthread> pool;
    pool.reserve(workers - 1);
    const int chunk = (count + workers - 1) / workers;
    for (int w = 1; w < workers; ++w) {
      const int begin = w * chunk;
      const int end = std::min(count, begin + chunk);
      pool.emplace_back([begin, end, w, &fn] {
        for (int k = begin; k < end; ++k) fn(k, w);
      });
    }
    for (int k = 0; k < std::min(count, chunk); ++k) fn(k, 0);
  }

 private:
  int threads_;
};

}  // namespace vlasov1d
