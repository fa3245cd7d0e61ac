//
// Copyright 2026 The Protectability Authors
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
//

#ifndef PROTECTABILITY_SRC_PARALLEL_FOR_H_
#define PROTECTABILITY_SRC_PARALLEL_FOR_H_

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace protectability {
namespace internal {

// Runs fn(0..items-1) across up to `threads` workers (0 = hardware
// concurrency). Each index must write only to its own output slot; with that
// discipline results are independent of scheduling.
template <typename Fn>
void ParallelFor(int items, int threads, Fn&& fn) {
  if (threads == 0) {
    threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads == 0) threads = 1;
  }
  if (threads > items) threads = items;
  if (threads <= 1) {
    for (int i = 0; i < items; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr first_error;
  std::mutex error_mu;
  auto worker = [&]() {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= items || failed.load()) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!first_error) first_error = std::current_exception();
        failed.store(true);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace internal
}  // namespace protectability

#endif  // PROTECTABILITY_SRC_PARALLEL_FOR_H_
