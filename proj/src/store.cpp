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

#include "refalloc/store.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "refalloc/credentials.hpp"
#include "refalloc/data_file.hpp"
#include "text.hpp"

namespace refalloc {

// ---------------------------------------------------------------------------
// Snapshot

const Official* Snapshot::find_official(const OfficialId& id) const {
  auto it = officials.find(id);
  return it == officials.end() ? nullptr : &it->second;
}

const Fixture* Snapshot::find_fixture(const FixtureId& id) const {
  auto it = fixtures.find(id);
  return it == fixtures.end() ? nullptr : &it->second;
}

bool Snapshot::is_available(const OfficialId& id, Date date) const {
  return availability.contains({id, date});
}

std::vector<std::string> Snapshot::audit() const {
  std::vector<std::string> problems;
  std::set<std::string> usernames;
  for (const auto& [id, o] : officials) {
    if (o.id != id) problems.push_back("official keyed " + id.str() + " carries id " + o.id.str());
    try {
      o.check();
    } catch (const Error& e) {
      problems.emplace_back(e.what());
    }
    if (!usernames.insert(text::lower(o.username)).second) {
      problems.push_back("duplicate username '" + o.username + "'");
    }
  }
  for (const auto& [id, fx] : fixtures) {
    if (fx.id != id) problems.push_back("fixture keyed " + id.str() + " carries id " + fx.id.str());
    try {
      fx.check();
    } catch (const Error& e) {
      problems.emplace_back(e.what());
    }
  }
  std::set<std::pair<FixtureId, Role>> slots;
  std::set<std::pair<FixtureId, OfficialId>> pairs;
  for (const Assignment& a : assignments) {
    if (!fixtures.contains(a.fixture)) {
      problems.push_back(to_string(a) + ": unknown fixture");
    }
    if (!officials.contains(a.official)) {
      problems.push_back(to_string(a) + ": unknown official");
    }
    if (!slots.insert({a.fixture, a.role}).second) {
      problems.push_back(to_string(a) + ": role already filled");
    }
    if (!pairs.insert({a.fixture, a.official}).second) {
      problems.push_back(to_string(a) + ": official already holds a role at this fixture");
    }
  }
  for (const AvailabilityRecord& r : availability) {
    if (!officials.contains(r.official)) {
      problems.push_back("availability for unknown official " + r.official.str());
    }
  }
  return problems;
}

bool Snapshot::same_content(const Snapshot& o) const {
  return officials == o.officials && fixtures == o.fixtures && assignments == o.assignments &&
         availability == o.availability;
}

// ---------------------------------------------------------------------------
// Queries

std::vector<AssignmentView> query_assignments(const Snapshot& snap,
                                              const AssignmentFilter& filter) {
  std::vector<AssignmentView> rows;
  for (const Assignment& a : snap.assignments) {
    if (filter.official && a.official != *filter.official) continue;
    const Fixture* fx = snap.find_fixture(a.fixture);
    const Official* off = snap.find_official(a.official);
    if (!fx || !off) continue;
    if (filter.date && fx->date != *filter.date) continue;
    if (filter.league && fx->league != *filter.league) continue;
    rows.push_back({off->id, off->name, fx->id, fx->league, fx->home_team, fx->away_team,
                    fx->location, fx->date, fx->time, a.role});
  }
  std::sort(rows.begin(), rows.end(), [](const AssignmentView& x, const AssignmentView& y) {
    return std::tie(x.date, x.league, x.fixture_id, x.role) <
           std::tie(y.date, y.league, y.fixture_id, y.role);
  });
  return rows;
}

std::vector<Official> find_officials_by_name(const Snapshot& snap, std::string_view name) {
  const std::string key = text::lower(text::trim(name));
  std::vector<Official> out;
  if (key.empty()) return out;
  for (const auto& [id, o] : snap.officials) {
    if (text::lower(text::trim(o.name)) == key) out.push_back(o);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Store

Store::Store() : current_(std::make_shared<const Snapshot>()) {}

Store::Store(std::filesystem::path data_file) : data_file_(std::move(data_file)) {
  Snapshot initial;
  if (std::filesystem::exists(*data_file_)) initial = read_data_file(*data_file_);
  initial.version = 0;
  current_ = std::make_shared<const Snapshot>(std::move(initial));
}

std::shared_ptr<const Snapshot> Store::snapshot() const {
  std::lock_guard lock(publish_mutex_);
  return current_;
}

std::uint64_t Store::version() const { return snapshot()->version; }

std::uint64_t Store::update(const std::function<void(Snapshot&)>& mutate) {
  std::lock_guard writer(write_mutex_);
  auto next = std::make_shared<Snapshot>(*snapshot());
  mutate(*next);
  if (auto problems = next->audit(); !problems.empty()) {
    const std::string first = problems.front();
    throw Error(ErrorCode::kIntegrityError, first, std::move(problems));
  }
  next->version += 1;
  const std::uint64_t v = next->version;
  std::lock_guard publish(publish_mutex_);
  current_ = std::move(next);
  return v;
}

std::uint64_t Store::add_official(Official official) {
  official.check();
  return update([&](Snapshot& s) {
    if (s.officials.contains(official.id)) {
      throw Error(ErrorCode::kDuplicateId, "official " + official.id.str() + " already exists");
    }
    const std::string user = text::lower(official.username);
    for (const auto& [id, o] : s.officials) {
      if (text::lower(o.username) == user) {
        throw Error(ErrorCode::kDuplicateUsername,
                    "username '" + official.username + "' is taken by " + id.str());
      }
    }
    s.officials.emplace(official.id, official);
  });
}

std::uint64_t Store::remove_official(const OfficialId& id, bool cascade) {
  return update([&](Snapshot& s) {
    if (!s.officials.contains(id)) {
      throw Error(ErrorCode::kUnknownId, "no official " + id.str());
    }
    std::size_t referencing = 0;
    for (const Assignment& a : s.assignments) referencing += a.official == id;
    if (referencing && !cascade) {
      throw Error(ErrorCode::kHasAssignments,
                  id.str() + " has " + std::to_string(referencing) +
                      " assignment(s); remove them first or cascade");
    }
    std::erase_if(s.assignments, [&](const Assignment& a) { return a.official == id; });
    std::erase_if(s.availability, [&](const AvailabilityRecord& r) { return r.official == id; });
    s.officials.erase(id);
  });
}

std::uint64_t Store::add_fixture(Fixture fixture) {
  fixture.check();
  return update([&](Snapshot& s) {
    if (!s.fixtures.emplace(fixture.id, fixture).second) {
      throw Error(ErrorCode::kDuplicateId, "fixture " + fixture.id.str() + " already exists");
    }
  });
}

std::uint64_t Store::remove_fixture(const FixtureId& id) {
  return update([&](Snapshot& s) {
    if (!s.fixtures.erase(id)) throw Error(ErrorCode::kUnknownId, "no fixture " + id.str());
    std::erase_if(s.assignments, [&](const Assignment& a) { return a.fixture == id; });
  });
}

std::uint64_t Store::declare_availability(const OfficialId& id, Date date) {
  return update([&](Snapshot& s) {
    if (!s.officials.contains(id)) throw Error(ErrorCode::kUnknownId, "no official " + id.str());
    s.availability.insert({id, date});
  });
}

std::uint64_t Store::set_password(const OfficialId& id, std::string_view password) {
  std::string digest = make_password_digest(password);
  return update([&](Snapshot& s) {
    auto it = s.officials.find(id);
    if (it == s.officials.end()) throw Error(ErrorCode::kUnknownId, "no official " + id.str());
    it->second.password_digest = digest;
  });
}

std::vector<AssignmentView> Store::query_assignments(const AssignmentFilter& filter) const {
  return refalloc::query_assignments(*snapshot(), filter);
}

std::vector<Official> Store::find_officials_by_name(std::string_view name) const {
  return refalloc::find_officials_by_name(*snapshot(), name);
}

void Store::export_data(const std::filesystem::path& path) const {
  write_data_file(*snapshot(), path);
}

std::uint64_t Store::import_data(const std::filesystem::path& path) {
  Snapshot loaded = read_data_file(path);
  return update([&](Snapshot& s) {
    const std::uint64_t v = s.version;
    s = std::move(loaded);
    s.version = v;
  });
}

void Store::save() const {
  if (!data_file_) return;
  std::lock_guard writer(write_mutex_);
  write_data_file(*snapshot(), *data_file_);
}

}  // namespace refalloc
