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

#ifndef BTLRANK_ERROR_H_
#define BTLRANK_ERROR_H_

#include <stdexcept>
#include <string>
#include <vector>

namespace btlrank {

// Base class for every error raised by the library.
class BtlError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A precondition on the arguments was violated (bad spec, bad index, ...).
class InvalidArgumentError : public BtlError {
 public:
  using BtlError::BtlError;
};

// The maximum-likelihood problem (or an alignment sub-problem) has no finite
// solution. `violating_set` names a node subset that never beats its
// complement, when one is known.
class NonexistenceError : public BtlError {
 public:
  NonexistenceError(const std::string& what, std::vector<int> violating_set);
  const std::vector<int>& violating_set() const { return violating_set_; }

 private:
  std::vector<int> violating_set_;
};

// A numerical procedure failed (non-convergence, underflow, disconnected
// operator where a connected one was required).
class NumericalError : public BtlError {
 public:
  using BtlError::BtlError;
};

}  // namespace btlrank

#endif  // BTLRANK_ERROR_H_
