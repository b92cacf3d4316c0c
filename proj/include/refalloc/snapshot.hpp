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

#ifndef REFALLOC_SNAPSHOT_HPP_
#define REFALLOC_SNAPSHOT_HPP_

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "refalloc/domain.hpp"

namespace refalloc {

// One consistent view of the registry. Readers hold these immutably; the
// store produces a new one per committed write.
struct Snapshot {
  std::map<OfficialId, Official> officials;
  std::map<FixtureId, Fixture> fixtures;
  std::set<Assignment> assignments;
  std::set<AvailabilityRecord> availability;
  std::uint64_t version = 0;

  const Official* find_official(const OfficialId& id) const;
  const Fixture* find_fixture(const FixtureId& id) const;
  bool is_available(const OfficialId& id, Date date) const;

  // Referential integrity and store-wide uniqueness. Empty means consistent.
  std::vector<std::string> audit() const;

  // Content equality; the version counter is ignored.
  bool same_content(const Snapshot& other) const;
};

}  // namespace refalloc

#endif  // REFALLOC_SNAPSHOT_HPP_
