// Copyright 2026 The wbpc Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef WBPC_PARALLEL_HPP_
#define WBPC_PARALLEL_HPP_

#include <atomic>

namespace wbpc {

// Thread budget for the OpenMP kernels. threads == 0 uses the OpenMP default;
// threads == 1 runs every loop on the calling thread.
struct ExecutionPolicy {
  int threads = 0;

  static ExecutionPolicy serial() { return {1}; }
};

// Resolved thread count for an OpenMP region.
int resolve_threads(const ExecutionPolicy& policy);

// Counts how many block workers run at the same time. Block-level loops in
// the container enter a ConcurrencyProbe::Scope per block, so tests can
// assert that single-thread mode never overlaps block work.
class ConcurrencyProbe {
 public:
  class Scope {
   public:
    Scope();
    ~Scope();
    Scope(const Scope&) = delete;
    Scope& operator=(const Scope&) = delete;
  };

  static void reset();
  static int max_observed();

 private:
  static std::atomic<int> active_;
  static std::atomic<int> peak_;
};

}  // namespace wbpc

#endif  // WBPC_PARALLEL_HPP_
