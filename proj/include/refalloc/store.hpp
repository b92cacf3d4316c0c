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

#ifndef REFALLOC_STORE_HPP_
#define REFALLOC_STORE_HPP_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "refalloc/domain.hpp"
#include "refalloc/snapshot.hpp"

namespace refalloc {

// One row of the appointments listing: an assignment joined with its
// official and fixture.
struct AssignmentView {
  OfficialId official_id;
  std::string official_name;
  FixtureId fixture_id;
  League league = League::kSPL;
  std::string home;
  std::string away;
  std::string location;
  Date date;
  TimeOfDay time;
  Role role = Role::kReferee;

  bool operator==(const AssignmentView&) const = default;
};

struct AssignmentFilter {
  std::optional<Date> date;
  std::optional<League> league;
  std::optional<OfficialId> official;
};

// Ordered by (date, league, fixture id, role).
std::vector<AssignmentView> query_assignments(const Snapshot& snapshot,
                                              const AssignmentFilter& filter = {});

// Case-insensitive exact match on the full name. All matches are returned.
std::vector<Official> find_officials_by_name(const Snapshot& snapshot,
                                             std::string_view name);

// Single writer, many readers. Readers take an immutable snapshot; every
// write copies the current snapshot, applies the change, audits it, and
// publishes it with the next version number. A write that throws leaves the
// published snapshot untouched.
class Store {
 public:
  Store();
  // Loads `data_file` if it exists; save() writes back to it.
  explicit Store(std::filesystem::path data_file);

  Store(const Store&) = delete;
  Store& operator=(const Store&) = delete;

  std::shared_ptr<const Snapshot> snapshot() const;
  std::uint64_t version() const;

  std::uint64_t add_official(Official official);
  std::uint64_t remove_official(const OfficialId& id, bool cascade = false);
  std::uint64_t add_fixture(Fixture fixture);
  // Cascades: the fixture's assignments go with it.
  std::uint64_t remove_fixture(const FixtureId& id);
  std::uint64_t declare_availability(const OfficialId& id, Date date);
  std::uint64_t set_password(const OfficialId& id, std::string_view password);

  // Generic atomic write used by the allocator front-ends.
  std::uint64_t update(const std::function<void(Snapshot&)>& mutate);

  std::vector<AssignmentView> query_assignments(const AssignmentFilter& filter = {}) const;
  std::vector<Official> find_officials_by_name(std::string_view name) const;

  void export_data(const std::filesystem::path& path) const;
  // Replaces the whole registry with the file's content.
  std::uint64_t import_data(const std::filesystem::path& path);

  const std::optional<std::filesystem::path>& data_file() const noexcept { return data_file_; }
  // No-op for an in-memory store.
  void save() const;

 private:
  std::optional<std::filesystem::path> data_file_;
  mutable std::mutex write_mutex_;
  mutable std::mutex publish_mutex_;
  std::shared_ptr<const Snapshot> current_;
};

}  // namespace refalloc

#endif  // REFALLOC_STORE_HPP_
