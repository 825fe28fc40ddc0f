#include "qoi/parallel.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <thread>
#include <vector>

namespace qoi {

std::size_t worker_count() {
  if (const char* env = std::getenv("QOI_THREADS"); env != nullptr) {
    std::size_t value = 0;
    const char* end = env + std::strlen(env);
    auto [ptr, ec] = std::from_chars(env, end, value);
    if (ec == std::errc() && ptr == end && value > 0) return value;
  }
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

void parallel_chunks(std::size_t n, std::size_t chunks,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& body) {
  chunks = std::max<std::size_t>(1, std::min(chunks, n));
  if (chunks == 1) {
    body(0, 0, n);
    return;
  }
  std::vector<std::exception_ptr> failures(chunks);
  {
    std::vector<std::jthread> workers;
    workers.reserve(chunks);
    for (std::size_t k = 0; k < chunks; ++k) {
      std::size_t begin = n * k / chunks;
      std::size_t end = n * (k + 1) / chunks;
      workers.emplace_back([&, k, begin, end] {
        try {
          body(k, begin, end);
        } catch (...) {
          failures[k] = std::current_exception();
        }
      });
    }
  }
  for (auto& failure : failures)
    if (failure) std::rethrow_exception(failure);
}

}  // namespace qoi
