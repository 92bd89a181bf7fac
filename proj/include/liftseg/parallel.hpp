#pragma once

#include <algorithm>
#include <functional>
#include <thread>
#include <vector>

namespace liftseg {

/// Runs fn(row) for row in [begin, end) over at most `jobs` threads in
/// contiguous chunks. Each row writes disjoint output, and every per-row
/// computation is identical to the serial one, so results are bitwise equal
/// at any job count.
inline void parallel_for_rows(int begin, int end, int jobs,
                              const std::function<void(int)>& fn) {
  const int total = end - begin;
  if (total <= 0) return;
  if (jobs <= 1 || total == 1) {
    for (int r = begin; r < end; ++r) fn(r);
    return;
  }
  const int workers = std::min(jobs, total);
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  const int chunk = (total + workers - 1) / workers;
  for (int t = 0; t < workers; ++t) {
    const int lo = begin + t * chunk;
    const int hi = std::min(end, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &fn] {
      for (int r = lo; r < hi; ++r) fn(r);
    });
  }
  for (std::thread& th : pool) th.join();
}

}  // namespace liftseg
