//
// Copyright 2026 The hybrid_dp Authors
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

#ifndef HYBRID_DP_PARALLEL_H_
#define HYBRID_DP_PARALLEL_H_

#include <cstdint>
#include <functional>

namespace hybrid_dp {

// Calls body(i) for every i in [0, count) on up to `threads` worker threads.
// Indices are handed out dynamically, so body must write only to slots owned
// by i; callers reduce the slots afterwards in index order, which keeps
// results independent of the thread count. threads <= 1 runs inline.
void ParallelFor(int64_t count, int threads,
                 const std::function<void(int64_t)>& body);

}  // namespace hybrid_dp

#endif  // HYBRID_DP_PARALLEL_H_
