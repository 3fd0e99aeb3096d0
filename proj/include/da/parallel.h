// Copyright 2026 The DA Toolkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DA_PARALLEL_H_
#define DA_PARALLEL_H_

#include <cstddef>
#include <functional>

namespace da {

// Worker count: hardware concurrency capped by DA_TOOLKIT_THREADS when set.
int MaxThreads();

// Runs fn(i) for i in [0, n). Each index runs exactly once; fn must not share
// mutable state across indices.
void ParallelFor(size_t n, const std::function<void(size_t)>& fn);

}  // namespace da

#endif  // DA_PARALLEL_H_
