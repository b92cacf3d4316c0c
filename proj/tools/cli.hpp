// Copyright 2026 The refalloc Authors
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

#ifndef REFALLOC_TOOLS_CLI_HPP_
#define REFALLOC_TOOLS_CLI_HPP_

#include <iosfwd>

namespace refalloc::tools {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;     // the operation was refused
inline constexpr int kExitUsage = 2;      // bad command line
inline constexpr int kExitStore = 3;      // the store cannot be opened or saved

// Entry point of the `refalloc` executable. With no subcommand the
// interactive menu runs on `in`/`out`.
int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out,
            std::ostream& err);

}  // namespace refalloc::tools

#endif  // REFALLOC_TOOLS_CLI_HPP_
