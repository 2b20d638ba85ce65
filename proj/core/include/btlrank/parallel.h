// Copyright 2026 The btlrank Authors.
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

#ifndef BTLRANK_PARALLEL_H_
#define BTLRANK_PARALLEL_H_

#include <cstddef>
#include <functional>

namespace btlrank {

// Worker count from the BTLRANK_WORKERS environment variable, falling back to
// std::thread::hardware_concurrency() (at least 1).
int DefaultWorkerCount();

// Runs body(0), ..., body(count - 1) on a bounded pool of `workers` threads
// (`workers <= 0` means DefaultWorkerCount()). Each index runs exactly once.
// The first exception thrown by any task is rethrown on the calling thread
// after all workers have joined.
void ParallelFor(std::size_t count, const std::function<void(std::size_t)>& body,
                 int workers = 0);

}  // namespace btlrank

#endif  // BTLRANK_PARALLEL_H_
