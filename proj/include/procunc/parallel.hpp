#pragma once

#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

#include "procunc/common.hpp"

namespace procunc {

/// Static chunked parallel loop. Work items write to caller-indexed storage,
/// so results are identical to the serial run regardless of scheduling.
/// threads = 0 uses the hardware concurrency; the first exception rethrows
/// after the join.
inline void parallel_for(Index count, int threads,
                         const std::function<void(Index)>& body) {
  if (threads == 0) threads = static_cast<int>(std::thread::hardware_concurrency());
  if (threads <= 1 || count < 2) {
    for (Index i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> workers;
  std::exception_ptr error;
  std::mutex error_mutex;
  const Index per = (count + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    Index lo = t * per;
    Index hi = std::min<Index>(count, lo + per);
    if (lo >= hi) break;
    workers.emplace_back([&, lo, hi] {
      try {
        for (Index i = lo; i < hi; ++i) body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& w : workers) w.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace procunc
