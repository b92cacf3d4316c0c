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

// Shared test fixtures, builders, random instances and oracles. Nothing in
// here calls the allocator.

#ifndef REFALLOC_TESTS_SUPPORT_HPP_
#define REFALLOC_TESTS_SUPPORT_HPP_

#include <filesystem>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "refalloc/allocator.hpp"
#include "refalloc/rules.hpp"
#include "refalloc/snapshot.hpp"

namespace refalloc::testing {

// ---- files ------------------------------------------------------------------

std::filesystem::path data_path(const std::string& name);
Snapshot load_dataset(const std::string& name);
std::string read_text(const std::filesystem::path& path);

// A fresh empty directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

// ---- builders ---------------------------------------------------------------

Date ymd(int y, int m, int d);
OfficialId oid(const std::string& s);
FixtureId fid(const std::string& s);

Official referee(const std::string& id, const std::string& name, int category,
                 Experience experience = Experience::kHigh);
Official observer(const std::string& id, const std::string& name, Experience experience);
Fixture fixture(const std::string& id, League league, Date date,
                const std::string& home = "Home", const std::string& away = "Away");

void add(Snapshot& s, const Official& o);
void add(Snapshot& s, const Fixture& f);

// ---- golden instances -------------------------------------------------------

// Two fixtures on one day (M1 in SFL1, M2 in SFL2, so M1 is visited first),
// each needing a category-1 referee and a category 1-2 AR1. Officials A and
// B are category 1, C and D category 2.
struct GoldenInstance {
  Snapshot snapshot;
  RequirementTable table;
  AllocationRequest request;  // points at `table`; do not copy the struct
};
void make_backtracking_instance(GoldenInstance& g);

// M1 (SFL1) needs a category-1 referee and two category-2 assistants; M2
// (SFL2) a category-1 referee and two assistants of category 2 or 3.
// Officials: A, B cat 1; C, D, E cat 2; F, G cat 3.
void make_greedy_instance(GoldenInstance& g);

// Assignments by fixture: role -> official id.
using Grid = std::map<std::string, std::map<Role, std::string>>;
Grid to_grid(const std::vector<Assignment>& assignments);

// The published hand assignment of the 2007 dataset.
std::set<Assignment> published_2007_assignment();

// ---- oracles ----------------------------------------------------------------

// Eligibility computed directly from a requirement entry.
bool oracle_eligible(const Official& o, const RoleRequirement& r);

// Required slots the request must fill: in scope, not held by a stored
// assignment.
struct OracleSlot {
  FixtureId fixture;
  Role role;
  Date date;
};
std::vector<OracleSlot> open_required_slots(const Snapshot& s, const AllocationRequest& req,
                                            const RequirementTable& table);

// True when every open Required slot can be given a distinct eligible (and,
// if requested, available) official who is not engaged that day by a stored
// assignment. Decided by checking the neighbourhood of every subset of each
// day's slots (Hall's condition). At most 30 slots per day.
bool hall_feasible(const Snapshot& s, const AllocationRequest& req,
                   const RequirementTable& table);

// Same question answered by trying every assignment, for small instances.
bool brute_force_feasible(const Snapshot& s, const AllocationRequest& req,
                          const RequirementTable& table);

// Straightforward restatement of the greedy method: slots in date, league,
// role, fixture order; candidates by grade under the ordering, then fewest
// picks this run, then id. Pre-assignments are not supported.
std::vector<Assignment> reference_greedy(const Snapshot& s, const AllocationRequest& req,
                                         const RequirementTable& table);

// Officials holding two assignments on one date (direct scan).
std::vector<std::string> double_bookings(const Snapshot& context,
                                         const std::set<Assignment>& assignments);

// ---- random instances -------------------------------------------------------

struct RandomSpec {
  int min_fixtures = 1;
  int max_fixtures = 4;
  int min_officials = 4;
  int max_officials = 12;
  int max_dates = 2;
  double availability_rate = 0.7;
  // Fraction of fixtures that get one stored assignment before the run.
  double stored_rate = 0.0;
};

struct RandomCase {
  Snapshot snapshot;
  AllocationRequest request;
};

RandomCase random_case(std::mt19937_64& rng, const RandomSpec& spec);

// 26 fixtures on one date (6 SPL, 5 each of SFL1-3 and Junior) and a pool
// large enough to fill every Required slot.
Snapshot scale_instance();

}  // namespace refalloc::testing

#endif  // REFALLOC_TESTS_SUPPORT_HPP_
