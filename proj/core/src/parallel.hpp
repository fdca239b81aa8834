// Copyright 2026 The qoreduce Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace qoreduce::detail {

inline std::size_t WorkerCount(std::size_t tasks) {
  const std::size_t hw = std::max<std::size_t>(1, std::thread::hardware_concurrency());
  return std::min(hw, tasks);
}

// Runs fn(i) for i in [0, count) on a small pool. fn must only touch
// per-index state. The first exception is rethrown after all workers join.
template <typename Fn>
void ParallelFor(std::size_t count, Fn&& fn) {
  const std::size_t workers = WorkerCount(count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto body = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::jthread> pool;
  pool.reserve(workers - 1);
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(body);
  body();
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace qoreduce::detail
