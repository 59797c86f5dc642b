// Copyright 2026 The rescal Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RESCAL_PARALLEL_HPP_
#define RESCAL_PARALLEL_HPP_

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "rescal/rng.hpp"

namespace rescal {

/// Monte-Carlo work split. The chunk count is part of the result's identity
/// (each chunk owns a derived stream); the thread count is not.
struct ChunkPlan {
  std::size_t chunks = 64;
  unsigned threads = 0;  // 0 = hardware concurrency
};

namespace detail {

/// Half-open range of items owned by chunk `c` out of `chunks`.
inline std::pair<std::size_t, std::size_t> chunk_range(std::size_t n,
                                                       std::size_t chunks,
                                                       std::size_t c) {
  const std::size_t base = n / chunks, extra = n % chunks;
  const std::size_t begin = c * base + std::min(c, extra);
  return {begin, begin + base + (c < extra ? 1 : 0)};
}

/// Runs fn(chunk_index, begin, end, rng) for each chunk. Chunk c receives
/// root.split(c), so the output written by fn is independent of scheduling.
template <typename Fn>
void for_each_chunk(std::size_t n, const ChunkPlan& plan, const RngState& root,
                    Fn&& fn) {
  const std::size_t chunks = std::max<std::size_t>(1, std::min(plan.chunks, n));
  unsigned threads = plan.threads ? plan.threads
                                  : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, chunks));

  auto run = [&](std::size_t c) {
    auto [b, e] = chunk_range(n, chunks, c);
    RngState rng = root.split(c);
    fn(c, b, e, rng);
  };

  if (threads <= 1) {
    for (std::size_t c = 0; c < chunks; ++c) run(c);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t c = next++; c < chunks; c = next++) {
          try {
            run(c);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace detail

}  // namespace rescal

#endif  // RESCAL_PARALLEL_HPP_
