#ifndef VOLGROW_PARALLEL_HPP
#define VOLGROW_PARALLEL_HPP

#include <atomic>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace volgrow {

// Runs fn(chunk_index, begin, end) over [0, total) split into fixed-size
// chunks. Chunk boundaries depend only on (total, chunk_size), never on the
// thread count, so any reduction that combines per-chunk results in chunk
// order is bitwise reproducible on 1 or N threads.
template <class Fn>
void for_chunks(std::int64_t total, std::int64_t chunk_size, Fn&& fn) {
  if (total <= 0) return;
  const std::int64_t num_chunks = (total + chunk_size - 1) / chunk_size;
  unsigned threads = std::thread::hardware_concurrency();
  if (threads == 0) threads = 1;
  if (num_chunks == 1 || threads == 1) {
    for (std::int64_t c = 0; c < num_chunks; ++c) {
      fn(c, c * chunk_size, std::min(total, (c + 1) * chunk_size));
    }
    return;
  }

  std::atomic<std::int64_t> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  auto worker = [&] {
    for (;;) {
      const std::int64_t c = next.fetch_add(1);
      if (c >= num_chunks || failed.load()) return;
      try {
        fn(c, c * chunk_size, std::min(total, (c + 1) * chunk_size));
      } catch (...) {
        if (!failed.exchange(true)) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  const unsigned n = std::min<unsigned>(threads, static_cast<unsigned>(num_chunks));
  pool.reserve(n);
  for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (failed.load() && error) std::rethrow_exception(error);
}

}  // namespace volgrow

#endif  // VOLGROW_PARALLEL_HPP
