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

// Eligibility rules as data. Each (league, role) pair has one requirement
// entry stating which grades and experience levels may fill it and whether
// the slot must be filled at all. The same-day rule (no official works two
// fixtures on one date) is enforced by validate() and by the allocator.

#ifndef REFALLOC_RULES_HPP_
#define REFALLOC_RULES_HPP_

#include <array>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "refalloc/domain.hpp"
#include "refalloc/snapshot.hpp"

namespace refalloc {

enum class Presence : std::uint8_t { kRequired, kBestEffort, kNotUsed };

std::string_view to_string(Presence p);

struct RoleRequirement {
  League league = League::kSPL;
  Role role = Role::kReferee;
  std::set<int> categories;  // on-field roles only
  // nullopt: no constraint on that experience.
  std::optional<std::set<Experience>> referee_experiences;
  std::optional<std::set<Experience>> observer_experiences;
  Presence presence = Presence::kNotUsed;

  bool used() const noexcept { return presence != Presence::kNotUsed; }
  bool operator==(const RoleRequirement&) const = default;
};

class RequirementTable {
 public:
  // The SFA table for all seven leagues.
  static const RequirementTable& canonical();

  // All 35 entries NotUsed.
  RequirementTable();

  const RoleRequirement& at(League league, Role role) const;
  void set(RoleRequirement requirement);

  const std::array<RoleRequirement, 35>& entries() const noexcept { return entries_; }

 private:
  static std::size_t index(League league, Role role);
  std::array<RoleRequirement, 35> entries_;
};

const RoleRequirement& requirement_for(League league, Role role);

bool is_eligible(const Official& official, const RoleRequirement& requirement);
bool is_eligible(const Official& official, League league, Role role);

enum class ViolationKind : std::uint8_t {
  kIneligibleCategory,
  kIneligibleExperience,
  kDoubleBooking,
  kMissingRequiredRole,
  kDuplicateRole,
  kUnknownReference,
  kNotAvailable,
};

std::string_view to_string(ViolationKind k);

struct Violation {
  ViolationKind kind = ViolationKind::kUnknownReference;
  FixtureId fixture;
  std::optional<Role> role;
  std::optional<OfficialId> official;
  // Double bookings name both fixtures; `fixture` is the smaller id.
  std::optional<FixtureId> other_fixture;
  std::string message;

  auto operator<=>(const Violation&) const = default;
};

struct ValidateOptions {
  bool check_availability = false;
  bool check_required_roles = true;
  // Fixtures whose Required slots are checked; null means every fixture in
  // the context.
  const std::set<FixtureId>* scope = nullptr;
  const RequirementTable* table = nullptr;  // null: canonical
};

// `context` supplies fixture, official and availability lookups; its own
// assignment set is ignored in favour of `assignments`.
std::vector<Violation> validate(const std::set<Assignment>& assignments,
                                const Snapshot& context,
                                const ValidateOptions& options = {});

}  // namespace refalloc

#endif  // REFALLOC_RULES_HPP_
