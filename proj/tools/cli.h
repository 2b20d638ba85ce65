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

#ifndef BTLRANK_TOOLS_CLI_H_
#define BTLRANK_TOOLS_CLI_H_

#include <iosfwd>

namespace btlrank {

// Exit codes of the btlrank command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitFailure = 2;  // numerical failure or no finite MLE

int CliMain(int argc, char** argv);
int CliMain(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace btlrank

#endif  // BTLRANK_TOOLS_CLI_H_
