#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace bellfacts::detail {

inline unsigned resolve_workers(unsigned requested) {
  if (requested != 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

// Calls body(chunk, begin, end) over `workers` contiguous slices of
// [0, count). Chunk boundaries depend only on (count, workers).
template <class Body>
void parallel_chunks(std::size_t count, unsigned workers, Body&& body) {
  workers = static_cast<unsigned>(
      std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(count, 1)));
  auto bounds = [&](unsigned c) { return count * c / workers; };
  if (workers == 1) {
    body(0u, std::size_t{0}, count);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned c = 0; c < workers; ++c) {
      pool.emplace_back([&, c] {
        try {
          body(c, bounds(c), bounds(c + 1));
        } catch (...) {
          errors[c] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace bellfacts::detail
