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

#include "wbpc/parallel.hpp"

#include <omp.h>

namespace wbpc {

int resolve_threads(const ExecutionPolicy& policy) {
  return policy.threads > 0 ? policy.threads : omp_get_max_threads();
}

std::atomic<int> ConcurrencyProbe::active_{0};
std::atomic<int> ConcurrencyProbe::peak_{0};

ConcurrencyProbe::Scope::Scope() {
  int now = active_.fetch_add(1, std::memory_order_relaxed) + 1;
  int peak = peak_.load(std::memory_order_relaxed);
  while (now > peak &&
         !peak_.compare_exchange_weak(peak, now, std::memory_order_relaxed)) {
  }
}

ConcurrencyProbe::Scope::~Scope() {
  active_.fetch_sub(1, std::memory_order_relaxed);
}

void ConcurrencyProbe::reset() { peak_.store(0); }

int ConcurrencyProbe::max_observed() { return peak_.load(); }

}  // namespace wbpc
