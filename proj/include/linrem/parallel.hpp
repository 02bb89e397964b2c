#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace linrem {

/// Runs fn(task) for task in [0, tasks) on up to `workers` threads and returns
/// the per-task results in task order, so reductions over them do not depend
/// on the worker count.
template <class Result, class Fn>
std::vector<Result> parallel_map(std::size_t tasks, unsigned workers, Fn&& fn) {
  std::vector<Result> results(tasks);
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(tasks, 1))));
  if (workers == 1) {
    for (std::size_t t = 0; t < tasks; ++t) results[t] = fn(t);
    return results;
  }
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t t = w; t < tasks; t += workers) results[t] = fn(t);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

template <class Fn>
std::uint64_t parallel_sum(std::size_t tasks, unsigned workers, Fn&& fn) {
  std::uint64_t total = 0;
  for (auto v : parallel_map<std::uint64_t>(tasks, workers, fn)) total += v;
  return total;
}

}  // namespace linrem
