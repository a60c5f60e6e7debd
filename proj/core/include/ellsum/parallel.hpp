#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <optional>
#include <thread>
#include <vector>

namespace ellsum {

/// Computes compute(item) for every item on up to `workers` threads and hands
/// the results to sink(item, result) in input order, one batch at a time.
/// Batch boundaries depend only on batch_size, so results and their order are
/// independent of the worker count. should_stop is polled between batches;
/// returns false if it fired before all items were consumed.
template <class Item, class Compute, class Sink>
bool ordered_parallel_map(const std::vector<Item>& items, unsigned workers, Compute compute, Sink sink,
                          std::size_t batch_size = 64, const std::function<bool()>& should_stop = {}) {
  using Result = std::invoke_result_t<Compute, const Item&>;
  workers = std::max(1u, workers);
  std::vector<std::optional<Result>> results;
  for (std::size_t begin = 0; begin < items.size(); begin += batch_size) {
    if (should_stop && should_stop()) return false;
    const std::size_t end = std::min(items.size(), begin + batch_size);
    results.assign(end - begin, std::nullopt);
    std::atomic<std::size_t> next{begin};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    auto work = [&] {
      for (std::size_t i = next++; i < end; i = next++) {
        try {
          results[i - begin].emplace(compute(items[i]));
        } catch (...) {
          if (!failed.exchange(true)) failure = std::current_exception();
          return;
        }
      }
    };
    const unsigned n = static_cast<unsigned>(std::min<std::size_t>(workers, end - begin));
    if (n <= 1) {
      work();
    } else {
      std::vector<std::jthread> pool;
      pool.reserve(n);
      for (unsigned t = 0; t < n; ++t) pool.emplace_back(work);
    }
    if (failure) std::rethrow_exception(failure);
    for (std::size_t i = begin; i < end; ++i) sink(items[i], std::move(*results[i - begin]));
  }
  return true;
}

}  // namespace ellsum
