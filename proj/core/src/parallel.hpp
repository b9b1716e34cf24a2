#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace recipro::detail {

/// Runs fn(begin, end) over contiguous chunks of [0, count) on up to
/// hardware_concurrency threads. Chunk boundaries depend only on `count`
/// and `chunk`, so results that are merged by index are deterministic.
template <typename Fn>
void parallel_chunks(std::size_t count, std::size_t chunk, Fn fn) {
  if (count == 0) return;
  chunk = std::max<std::size_t>(chunk, 1);
  const std::size_t chunks = (count + chunk - 1) / chunk;
  const std::size_t workers =
      std::min<std::size_t>(chunks, std::max(1u, std::thread::hardware_concurrency()));
  if (workers <= 1) {
    for (std::size_t c = 0; c < chunks; ++c) fn(c * chunk, std::min(count, (c + 1) * chunk));
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (std::size_t t = 0; t < workers; ++t) {
    threads.emplace_back([&, t] {
      try {
        for (std::size_t c = t; c < chunks; c += workers) fn(c * chunk, std::min(count, (c + 1) * chunk));
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : threads) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace recipro::detail
