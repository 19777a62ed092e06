#pragma once

// Deterministic chunked map-reduce over an index range. Chunk boundaries do
// not depend on the worker count and partial results are combined in chunk
// order, so the reduction is reproducible at any thread count.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

namespace birkhoff {

/// Called with (slots processed, total slots, slots per second).
using ProgressFn = std::function<void(std::size_t, std::size_t, double)>;

struct ParallelOptions {
  unsigned threads = 1;
  std::size_t chunk_size = 2048;
  /// Progress is reported each time another `progress_every` slots complete.
  std::size_t progress_every = 10000;
  ProgressFn progress;
};

/// map(begin, end) -> Partial for each chunk; combine(acc, partial) folds in
/// chunk order starting from `init`.
template <typename Partial, typename Map, typename Combine>
Partial chunked_reduce(std::size_t total, const ParallelOptions& opts, Partial init, Map&& map, Combine&& combine) {
  const std::size_t chunk = std::max<std::size_t>(1, opts.chunk_size);
  const std::size_t num_chunks = (total + chunk - 1) / chunk;
  std::vector<std::optional<Partial>> partials(num_chunks);

  std::atomic<std::size_t> next{0};
  std::mutex report_mu;
  std::size_t done = 0, last_report = 0;
  const auto start = std::chrono::steady_clock::now();
  std::exception_ptr failure;

  auto worker = [&] {
    for (;;) {
      const std::size_t c = next.fetch_add(1);
      if (c >= num_chunks) return;
      {
        std::lock_guard lock(report_mu);
        if (failure) return;
      }
      const std::size_t begin = c * chunk;
      const std::size_t end = std::min(total, begin + chunk);
      try {
        partials[c].emplace(map(begin, end));
      } catch (...) {
        std::lock_guard lock(report_mu);
        if (!failure) failure = std::current_exception();
        return;
      }
      std::lock_guard lock(report_mu);
      done += end - begin;
      if (opts.progress && opts.progress_every > 0 && done / opts.progress_every > last_report / opts.progress_every) {
        last_report = done;
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        opts.progress(done, total, secs > 0 ? static_cast<double>(done) / secs : 0.0);
      }
    }
  };

  const unsigned threads = std::max(1u, opts.threads);
  if (threads == 1 || num_chunks <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < std::min<std::size_t>(threads, num_chunks); ++i) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  for (auto& p : partials) combine(init, std::move(*p));
  return init;
}

}  // namespace birkhoff
