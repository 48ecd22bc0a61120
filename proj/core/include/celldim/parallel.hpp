#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace celldim {

/// Runs fn(i) for i in [0, n) over `workers` threads using contiguous
/// blocks. Each index is written by exactly one invocation, so results do
/// not depend on the worker count.
template <class Fn>
void parallel_for(std::size_t n, unsigned workers, Fn&& fn) {
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (workers == 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errors(workers);
  std::size_t const block = (n + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    std::size_t const begin = w * block;
    std::size_t const end = std::min(n, begin + block);
    threads.emplace_back([&, w, begin, end] {
      try {
        for (std::size_t i = begin; i < end; ++i) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto const& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace celldim
