#pragma once

// Block-parallel scans whose results do not depend on the thread count.

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace isl {

/// Worker count: ISL_THREADS if set to a positive integer, otherwise the
/// hardware concurrency.
inline unsigned worker_count() {
  if (const char* env = std::getenv("ISL_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return static_cast<unsigned>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

namespace detail {

template <class F>
void run_blocks(std::size_t n, std::size_t min_block, F&& body) {
  unsigned workers = worker_count();
  std::size_t blocks = std::max<std::size_t>(1, std::min<std::size_t>(workers, n / std::max<std::size_t>(1, min_block)));
  if (blocks <= 1) {
    body(std::size_t{0}, std::size_t{0}, n);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(blocks);
  for (std::size_t b = 0; b < blocks; ++b) {
    std::size_t lo = n * b / blocks, hi = n * (b + 1) / blocks;
    pool.emplace_back([&body, b, lo, hi] { body(b, lo, hi); });
  }
  for (auto& t : pool) t.join();
}

}  // namespace detail

/// Scans [0, n) in contiguous blocks. `scan(lo, hi)` returns the first hit in
/// its range; the hit from the lowest block wins, so the answer is the same
/// one a sequential scan would produce.
template <class T, class Scan>
std::optional<T> parallel_first(std::size_t n, Scan scan, std::size_t min_block = 8) {
  unsigned workers = worker_count();
  std::size_t blocks = std::max<std::size_t>(1, std::min<std::size_t>(workers, n / std::max<std::size_t>(1, min_block)));
  std::vector<std::optional<T>> found(blocks);
  detail::run_blocks(n, min_block, [&](std::size_t b, std::size_t lo, std::size_t hi) { found[b] = scan(lo, hi); });
  for (auto& f : found)
    if (f) return f;
  return std::nullopt;
}

/// Collects per-block result vectors and concatenates them in block order.
template <class T, class Scan>
std::vector<T> parallel_collect(std::size_t n, Scan scan, std::size_t min_block = 8) {
  unsigned workers = worker_count();
  std::size_t blocks = std::max<std::size_t>(1, std::min<std::size_t>(workers, n / std::max<std::size_t>(1, min_block)));
  std::vector<std::vector<T>> parts(blocks);
  detail::run_blocks(n, min_block, [&](std::size_t b, std::size_t lo, std::size_t hi) { parts[b] = scan(lo, hi); });
  std::vector<T> out;
  for (auto& p : parts) out.insert(out.end(), std::make_move_iterator(p.begin()), std::make_move_iterator(p.end()));
  return out;
}

}  // namespace isl
