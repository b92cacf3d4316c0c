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

// The secretary's interactive menu.
//
//   Main ── 1 Update officials and fixtures ── add/remove official/fixture
//        ├─ 2 Assign officials ── automatic (1-6), pre-assign (7-9)
//        ├─ 3 View appointments ── ALL, SPL, SFL 1-3, Junior
//        ├─ 4 Change assignment
//        └─ 5 Exit
//
// Every submenu ends with "Return to main menu". The store is saved after
// each change and again on exit or end of input.

#ifndef REFALLOC_TOOLS_MENU_HPP_
#define REFALLOC_TOOLS_MENU_HPP_

#include <iosfwd>

#include "refalloc/refalloc.h"

namespace refalloc::tools {

struct MenuOptions {
  bool backtracking = false;
};

// Returns 0 on Exit or end of input, nonzero when the store cannot be saved.
int run_menu(refalloc_store* store, std::istream& in, std::ostream& out,
             const MenuOptions& options = {});

// Eight lines per appointment: league, home, away, location, date, time,
// official name, role. Blocks are separated by a blank line.
void print_views(const refalloc_views* views, std::ostream& out);

// Allocation summary shared by the menu and the `assign` subcommand.
void print_result(const refalloc_result* result, std::ostream& out);

}  // namespace refalloc::tools

#endif  // REFALLOC_TOOLS_MENU_HPP_
