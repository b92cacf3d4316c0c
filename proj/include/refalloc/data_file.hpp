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

// The registry's interchange/persistence format: one UTF-8 text file holding
// four CSV sections, each introduced by a "[name]" line and a fixed header
// row.
//
//   [officials]
//   id,name,category,refereeExperience,observerExperience,username,passwordDigest
//   [fixtures]
//   type,location,date,time,team1,team2,fixtureId
//   [assignments]
//   fixtureId,officialId,role
//   [availability]
//   officialId,date
//
// Empty fields mean "absent". Lines starting with '#' and blank lines are
// ignored. Sections may be omitted or appear in any order, but each at most
// once.

#ifndef REFALLOC_DATA_FILE_HPP_
#define REFALLOC_DATA_FILE_HPP_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "refalloc/snapshot.hpp"

namespace refalloc {

inline constexpr std::string_view kOfficialsHeader =
    "id,name,category,refereeExperience,observerExperience,username,passwordDigest";
inline constexpr std::string_view kFixturesHeader =
    "type,location,date,time,team1,team2,fixtureId";
inline constexpr std::string_view kAssignmentsHeader = "fixtureId,officialId,role";
inline constexpr std::string_view kAvailabilityHeader = "officialId,date";

// Throws kParseError ("line N: ...") on malformed text and kIntegrityError
// ("line N: ...") when a record breaks a registry invariant.
Snapshot parse_data(std::string_view text);
std::string format_data(const Snapshot& snapshot);

Snapshot read_data_file(const std::filesystem::path& path);
// Writes to a sibling temporary file and renames it into place.
void write_data_file(const Snapshot& snapshot, const std::filesystem::path& path);

namespace csv {

std::vector<std::string> split_record(std::string_view line);
std::string join_record(const std::vector<std::string>& fields);

}  // namespace csv

}  // namespace refalloc

#endif  // REFALLOC_DATA_FILE_HPP_
