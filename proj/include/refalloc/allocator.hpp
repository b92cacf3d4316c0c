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

// Assignment of officials to fixture slots.
//
// Slots are visited in a fixed order: date ascending, then league in
// canonical order, then role stage (referees, AR1, AR2, fourth officials,
// observers), then fixture id. Two strategies share that order:
//
//  * Greedy: each slot takes the first acceptable candidate and the choice is
//    never revisited. Slots nobody can fill are reported and skipped.
//  * Backtracking: depth-first search over the Required slots that undoes
//    choices on dead ends, so it fills every Required slot whenever that is
//    possible at all. Best-effort slots are filled greedily afterwards.
//
// A candidate is acceptable for a slot when it is eligible for the
// (league, role) entry of the requirement table, is not already engaged on
// the fixture's date, and, if the request asks for it, has declared
// availability for that date.

#ifndef REFALLOC_ALLOCATOR_HPP_
#define REFALLOC_ALLOCATOR_HPP_

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "refalloc/domain.hpp"
#include "refalloc/rules.hpp"
#include "refalloc/snapshot.hpp"

namespace refalloc {

// Candidate order. Grade means the referee category for on-field roles and
// the observer experience (High best) for observers.
//  kBestFirst:   best grade first.
//  kReserveBest: least qualified eligible grade first, keeping top officials
//                for the slots only they can fill.
// Ties: fewer assignments made in this run, then ascending official id.
enum class OrderingPolicy : std::uint8_t { kBestFirst, kReserveBest };
enum class Algorithm : std::uint8_t { kGreedy, kBacktracking };

std::string_view to_string(OrderingPolicy p);
std::string_view to_string(Algorithm a);
std::optional<OrderingPolicy> parse_ordering(std::string_view s);
std::optional<Algorithm> parse_algorithm(std::string_view s);

struct AllocationRequest {
  std::set<Date> dates;
  std::set<League> leagues{kAllLeagues.begin(), kAllLeagues.end()};
  Algorithm algorithm = Algorithm::kGreedy;
  OrderingPolicy ordering = OrderingPolicy::kReserveBest;
  bool require_availability = false;
  std::vector<Assignment> pre_assignments;

  // Backtracking only.
  std::uint64_t node_limit = 10'000'000;
  // Prune a branch as soon as the open slots of its date can no longer all
  // be matched to free candidates.
  bool lookahead = true;
  // Record the partial assignment at every dead end.
  bool trace = false;

  // Defaults to the canonical table.
  const RequirementTable* table = nullptr;
};

struct UnfilledSlot {
  FixtureId fixture;
  Role role = Role::kReferee;
  Presence presence = Presence::kRequired;

  auto operator<=>(const UnfilledSlot&) const = default;
};

struct AllocationStats {
  std::map<League, std::map<Role, int>> filled;  // slots held in the result
  std::size_t created = 0;                       // new assignments this run
  std::uint64_t nodes = 0;                       // backtracking search nodes
  std::chrono::microseconds elapsed{0};
};

struct AllocationResult {
  // Every assignment in scope: those already stored, the accepted
  // pre-assignments, and the new ones.
  std::vector<Assignment> assignments;
  // Assignments the store does not hold yet, accepted pre-assignments first,
  // then in slot order.
  std::vector<Assignment> created;
  std::vector<UnfilledSlot> unfilled;
  // All Required slots in scope are filled.
  bool complete = false;
  // Backtracking proved that no complete assignment exists.
  bool infeasible = false;
  // Partial assignments at dead ends, in visit order (trace only).
  std::vector<std::vector<Assignment>> dead_ends;
  AllocationStats stats;
};

// Throws kInvalidPreAssignment (every failing pre-assignment listed in
// details()) before allocating anything.
AllocationResult allocate_greedy(const AllocationRequest& request, const Snapshot& snapshot);

// Throws kInvalidPreAssignment as above, and kSearchBudgetExceeded when the
// node limit is reached before the search is decided.
AllocationResult allocate_backtracking(const AllocationRequest& request,
                                       const Snapshot& snapshot);

AllocationResult allocate(const AllocationRequest& request, const Snapshot& snapshot);

// Adds the result's assignments to `snapshot`. Existing ones are kept.
void apply(const AllocationResult& result, Snapshot& snapshot);

struct ChangeOptions {
  bool require_availability = false;
  // When set the fixture must be played on this date (kDateMismatch).
  std::optional<Date> expected_date;
  const RequirementTable* table = nullptr;
};

// Replaces `old_official` in the given slot by `new_official` inside
// `snapshot`. On any error `snapshot` is left untouched.
// Errors: kUnknownReference, kNotAssigned, kDateMismatch,
// kIneligibleReplacement, kDoubleBookedReplacement, kUnavailableReplacement.
Assignment change_assignment(Snapshot& snapshot, const FixtureId& fixture,
                             const OfficialId& old_official, const OfficialId& new_official,
                             Role role, const ChangeOptions& options = {});

using ManualSlots = std::map<std::pair<FixtureId, Role>, OfficialId>;

// Validates hand-picked slots. Without auto-fill the result holds exactly the
// manual assignments; with it the greedy allocator fills the rest of the
// request's scope around them. Every manual slot must belong to a fixture in
// the request's dates and leagues.
AllocationResult pre_assign(const ManualSlots& slots, bool auto_fill,
                            const AllocationRequest& request, const Snapshot& snapshot);

}  // namespace refalloc

#endif  // REFALLOC_ALLOCATOR_HPP_
