#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace curved_mie::cli {

/// CURVED_MIE_THREADS if set and positive, hardware concurrency otherwise.
unsigned thread_cap();

namespace detail {
bool& in_worker();
}

/// Calls task(i) for i in [0, count). Each task must write only its own
/// slot. Nested calls from inside a worker run serially. The first exception
/// by index is rethrown after all workers join.
template <typename Task>
void parallel_for(std::size_t count, Task&& task, bool serial = false) {
  const unsigned cap = thread_cap();
  if (serial || cap <= 1 || count <= 1 || detail::in_worker()) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  const std::size_t workers = std::min<std::size_t>(cap, count);
  std::vector<std::exception_ptr> errors(count);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      detail::in_worker() = true;
      for (std::size_t i = w; i < count; i += workers) {
        try {
          task(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace curved_mie::cli
