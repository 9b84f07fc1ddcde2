// Copyright 2026 The divsum Authors.
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

#ifndef DIVSUM_PARALLEL_HPP_
#define DIVSUM_PARALLEL_HPP_

#include <cstddef>
#include <functional>

namespace divsum {

// Worker count from DIVSUM_THREADS; 0, unset or unparsable means
// hardware concurrency.
std::size_t thread_count();

// Runs body(i) for i in [0, n). Indices are split into contiguous blocks,
// one per worker. The first exception thrown by any body is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace divsum

#endif  // DIVSUM_PARALLEL_HPP_
