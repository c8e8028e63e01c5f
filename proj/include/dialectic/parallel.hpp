#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <mutex>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace dialectic {

// Bounded fan-out map preserving input order in the output. The first caught
// exception is rethrown after all workers join.
template <typename T, typename F>
auto parallel_map(const std::vector<T>& items, int concurrency, F&& fn)
    -> std::vector<decltype(fn(items[0]))> {
  using R = decltype(fn(items[0]));
  std::vector<R> results(items.size());
  if (items.empty()) return results;
  if (concurrency < 1) concurrency = 1;
  if (concurrency == 1) {
    for (size_t i = 0; i < items.size(); ++i) results[i] = fn(items[i]);
    return results;
  }

  std::atomic<size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto worker = [&] {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= items.size()) return;
      try {
        results[i] = fn(items[i]);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> threads;
  int n_threads = std::min<int>(concurrency, static_cast<int>(items.size()));
  threads.reserve(n_threads);
  for (int t = 0; t < n_threads; ++t) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);
  return results;
}

}  // namespace dialectic
