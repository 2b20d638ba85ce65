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

#include "btlrank/error.h"

#include <utility>

namespace btlrank {

NonexistenceError::NonexistenceError(const std::string& what, std::vector<int> violating_set)
    : BtlError(what), violating_set_(std::move(violating_set)) {}

}  // namespace btlrank
