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

#include "support.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "refalloc/data_file.hpp"

namespace refalloc::testing {

std::filesystem::path data_path(const std::string& name) {
  return std::filesystem::path(REFALLOC_DATA_DIR) / name;
}

Snapshot load_dataset(const std::string& name) { return read_data_file(data_path(name)); }

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TempDir::TempDir() {
  std::random_device rd;
  for (;;) {
    path_ = std::filesystem::temp_directory_path() /
            ("refalloc-test-" + std::to_string(rd()) + std::to_string(rd()));
    if (std::filesystem::create_directory(path_)) return;
  }
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

Date ymd(int y, int m, int d) {
  return Date{std::chrono::year(y), std::chrono::month(static_cast<unsigned>(m)),
              std::chrono::day(static_cast<unsigned>(d))};
}

OfficialId oid(const std::string& s) { return OfficialId::parse(s); }
FixtureId fid(const std::string& s) { return FixtureId::parse(s); }

Official referee(const std::string& id, const std::string& name, int category,
                 Experience experience) {
  Official o;
  o.id = oid(id);
  o.name = name;
  o.category = Category(category);
  o.referee_experience = experience;
  o.username = id;
  return o;
}

Official observer(const std::string& id, const std::string& name, Experience experience) {
  Official o;
  o.id = oid(id);
  o.name = name;
  o.observer_experience = experience;
  o.username = id;
  return o;
}

Fixture fixture(const std::string& id, League league, Date date, const std::string& home,
                const std::string& away) {
  Fixture f;
  f.id = fid(id);
  f.league = league;
  f.home_team = home;
  f.away_team = away;
  f.location = home;
  f.date = date;
  f.time = TimeOfDay(14, 0);
  return f;
}

void add(Snapshot& s, const Official& o) { s.officials.emplace(o.id, o); }
void add(Snapshot& s, const Fixture& f) { s.fixtures.emplace(f.id, f); }

namespace {

RoleRequirement on_field(League league, Role role, std::set<int> categories) {
  RoleRequirement r;
  r.league = league;
  r.role = role;
  r.categories = std::move(categories);
  r.presence = Presence::kRequired;
  return r;
}

}  // namespace

void make_backtracking_instance(GoldenInstance& g) {
  const Date day = ymd(2009, 1, 10);
  g.snapshot = {};
  add(g.snapshot, referee("A1", "A", 1));
  add(g.snapshot, referee("B1", "B", 1));
  add(g.snapshot, referee("C1", "C", 2));
  add(g.snapshot, referee("D1", "D", 2));
  add(g.snapshot, fixture("M1", League::kSFL1, day, "Home1", "Away1"));
  add(g.snapshot, fixture("M2", League::kSFL2, day, "Home2", "Away2"));
  g.table = RequirementTable();
  for (League l : {League::kSFL1, League::kSFL2}) {
    g.table.set(on_field(l, Role::kReferee, {1}));
    g.table.set(on_field(l, Role::kAssistantReferee1, {1, 2}));
  }
  g.request = {};
  g.request.dates = {day};
  g.request.leagues = {League::kSFL1, League::kSFL2};
  g.request.algorithm = Algorithm::kBacktracking;
  g.request.ordering = OrderingPolicy::kBestFirst;
  g.request.trace = true;
  g.request.table = &g.table;
}

void make_greedy_instance(GoldenInstance& g) {
  const Date day = ymd(2009, 1, 17);
  g.snapshot = {};
  add(g.snapshot, referee("A1", "A", 1));
  add(g.snapshot, referee("B1", "B", 1));
  add(g.snapshot, referee("C1", "C", 2));
  add(g.snapshot, referee("D1", "D", 2));
  add(g.snapshot, referee("E1", "E", 2));
  add(g.snapshot, referee("F1", "F", 3));
  add(g.snapshot, referee("G1", "G", 3));
  add(g.snapshot, fixture("M1", League::kSFL1, day, "Home1", "Away1"));
  add(g.snapshot, fixture("M2", League::kSFL2, day, "Home2", "Away2"));
  g.table = RequirementTable();
  g.table.set(on_field(League::kSFL1, Role::kReferee, {1}));
  g.table.set(on_field(League::kSFL1, Role::kAssistantReferee1, {2}));
  g.table.set(on_field(League::kSFL1, Role::kAssistantReferee2, {2}));
  g.table.set(on_field(League::kSFL2, Role::kReferee, {1}));
  g.table.set(on_field(League::kSFL2, Role::kAssistantReferee1, {2, 3}));
  g.table.set(on_field(League::kSFL2, Role::kAssistantReferee2, {2, 3}));
  g.request = {};
  g.request.dates = {day};
  g.request.leagues = {League::kSFL1, League::kSFL2};
  g.request.algorithm = Algorithm::kGreedy;
  g.request.table = &g.table;
}

Grid to_grid(const std::vector<Assignment>& assignments) {
  Grid g;
  for (const Assignment& a : assignments) g[a.fixture.str()][a.role] = a.official.str();
  return g;
}

std::set<Assignment> published_2007_assignment() {
  // Fixture, then referee, AR1, AR2, fourth official, observer ("" = none).
  const std::vector<std::vector<std::string>> rows = {
      {"SPL001", "R002", "R006", "R008", "R003", "E002"},
      {"SPL002", "R001", "R009", "R010", "R004", "E003"},
      {"SLF001", "R005", "R011", "R007", "", "E005"},
      {"J001", "R012", "R018", "R016", "", "E006"},
      {"J002", "R014", "R015", "R017", "", ""},
      {"Y001", "R020", "", "", "", "E001"},
      {"Y002", "R019", "", "", "", "E004"},
  };
  std::set<Assignment> out;
  for (const auto& row : rows) {
    for (std::size_t k = 0; k < kAllRoles.size(); ++k) {
      if (!row[k + 1].empty()) out.insert({fid(row[0]), oid(row[k + 1]), kAllRoles[k]});
    }
  }
  return out;
}

// ---- oracles ------------------------------------------------------------------

bool oracle_eligible(const Official& o, const RoleRequirement& r) {
  if (r.presence == Presence::kNotUsed) return false;
  if (r.role == Role::kObserver) {
    if (!o.observer_experience) return false;
    return !r.observer_experiences || r.observer_experiences->count(*o.observer_experience) > 0;
  }
  if (!o.category || r.categories.count(o.category->value()) == 0) return false;
  if (r.referee_experiences) {
    return o.referee_experience && r.referee_experiences->count(*o.referee_experience) > 0;
  }
  return true;
}

namespace {

bool in_scope(const Fixture& f, const AllocationRequest& req) {
  return req.dates.count(f.date) > 0 && req.leagues.count(f.league) > 0;
}

std::set<std::pair<OfficialId, Date>> engaged_days(const Snapshot& s) {
  std::set<std::pair<OfficialId, Date>> out;
  for (const Assignment& a : s.assignments) {
    out.insert({a.official, s.fixtures.at(a.fixture).date});
  }
  return out;
}

bool held(const Snapshot& s, const FixtureId& f, Role role) {
  for (const Assignment& a : s.assignments) {
    if (a.fixture == f && a.role == role) return true;
  }
  return false;
}

// Per date: the open slots and, for each, the candidate officials as
// indices into `officials`.
struct DayProblem {
  std::vector<OracleSlot> slots;
  std::vector<std::vector<int>> candidates;
};

std::map<Date, DayProblem> day_problems(const Snapshot& s, const AllocationRequest& req,
                                        const RequirementTable& table) {
  std::vector<const Official*> officials;
  for (const auto& [id, o] : s.officials) officials.push_back(&o);
  const auto engaged = engaged_days(s);
  std::map<Date, DayProblem> out;
  for (const OracleSlot& slot : open_required_slots(s, req, table)) {
    const Fixture& f = s.fixtures.at(slot.fixture);
    const RoleRequirement& r = table.at(f.league, slot.role);
    std::vector<int> cands;
    for (std::size_t i = 0; i < officials.size(); ++i) {
      const Official& o = *officials[i];
      if (!oracle_eligible(o, r)) continue;
      if (engaged.count({o.id, slot.date})) continue;
      if (req.require_availability && !s.availability.count({o.id, slot.date})) continue;
      cands.push_back(static_cast<int>(i));
    }
    out[slot.date].slots.push_back(slot);
    out[slot.date].candidates.push_back(std::move(cands));
  }
  return out;
}

bool try_all(const std::vector<std::vector<int>>& cands, std::size_t k, std::vector<char>& used) {
  if (k == cands.size()) return true;
  for (int i : cands[k]) {
    if (used[static_cast<std::size_t>(i)]) continue;
    used[static_cast<std::size_t>(i)] = 1;
    const bool ok = try_all(cands, k + 1, used);
    used[static_cast<std::size_t>(i)] = 0;
    if (ok) return true;
  }
  return false;
}

}  // namespace

std::vector<OracleSlot> open_required_slots(const Snapshot& s, const AllocationRequest& req,
                                            const RequirementTable& table) {
  std::vector<OracleSlot> out;
  for (const auto& [id, f] : s.fixtures) {
    if (!in_scope(f, req)) continue;
    for (Role role : kAllRoles) {
      if (table.at(f.league, role).presence != Presence::kRequired) continue;
      if (held(s, id, role)) continue;
      out.push_back({id, role, f.date});
    }
  }
  return out;
}

bool hall_feasible(const Snapshot& s, const AllocationRequest& req,
                   const RequirementTable& table) {
  if (s.officials.size() > 64) throw std::invalid_argument("hall_feasible: > 64 officials");
  for (const auto& [date, day] : day_problems(s, req, table)) {
    const std::size_t n = day.slots.size();
    if (n > 30) throw std::invalid_argument("hall_feasible: > 30 slots on one day");
    std::vector<std::uint64_t> mask(n, 0);
    for (std::size_t k = 0; k < n; ++k) {
      for (int i : day.candidates[k]) mask[k] |= std::uint64_t{1} << i;
    }
    // neighbourhood[T] built from T without its lowest slot.
    std::vector<std::uint64_t> neighbourhood(std::size_t{1} << n, 0);
    for (std::uint32_t t = 1; t < (std::uint32_t{1} << n); ++t) {
      const std::uint32_t low = t & (~t + 1);
      neighbourhood[t] = neighbourhood[t ^ low] | mask[static_cast<std::size_t>(std::countr_zero(low))];
      if (std::popcount(neighbourhood[t]) < std::popcount(t)) return false;
    }
  }
  return true;
}

bool brute_force_feasible(const Snapshot& s, const AllocationRequest& req,
                          const RequirementTable& table) {
  for (const auto& [date, day] : day_problems(s, req, table)) {
    std::vector<char> used(s.officials.size(), 0);
    if (!try_all(day.candidates, 0, used)) return false;
  }
  return true;
}

std::vector<Assignment> reference_greedy(const Snapshot& s, const AllocationRequest& req,
                                         const RequirementTable& table) {
  auto engaged = engaged_days(s);
  std::map<OfficialId, int> picks;
  std::vector<Assignment> made;
  auto grade = [](const Official& o, Role role) {
    if (role == Role::kObserver) {
      return *o.observer_experience == Experience::kHigh     ? 1
             : *o.observer_experience == Experience::kMedium ? 2
                                                             : 3;
    }
    return o.category->value();
  };
  for (Date date : req.dates) {
    for (League league : kAllLeagues) {
      if (!req.leagues.count(league)) continue;
      for (Role role : kAllRoles) {
        const RoleRequirement& r = table.at(league, role);
        if (r.presence == Presence::kNotUsed) continue;
        for (const auto& [id, f] : s.fixtures) {
          if (f.date != date || f.league != league || held(s, id, role)) continue;
          std::vector<const Official*> cands;
          for (const auto& [oid_, o] : s.officials) {
            if (!oracle_eligible(o, r) || engaged.count({o.id, date})) continue;
            if (req.require_availability && !s.availability.count({o.id, date})) continue;
            cands.push_back(&o);
          }
          if (cands.empty()) continue;
          auto key = [&](const Official* o) {
            const int g = grade(*o, role);
            return std::tuple(req.ordering == OrderingPolicy::kBestFirst ? g : -g, picks[o->id],
                              o->id);
          };
          const Official* best = *std::min_element(
              cands.begin(), cands.end(),
              [&](const Official* a, const Official* b) { return key(a) < key(b); });
          made.push_back({id, best->id, role});
          engaged.insert({best->id, date});
          ++picks[best->id];
        }
      }
    }
  }
  return made;
}

std::vector<std::string> double_bookings(const Snapshot& context,
                                         const std::set<Assignment>& assignments) {
  std::map<std::pair<OfficialId, Date>, std::vector<std::string>> seen;
  for (const Assignment& a : assignments) {
    seen[{a.official, context.fixtures.at(a.fixture).date}].push_back(a.fixture.str());
  }
  std::vector<std::string> out;
  for (const auto& [key, fixtures] : seen) {
    if (fixtures.size() > 1) out.push_back(key.first.str() + " works " + std::to_string(fixtures.size()) + " fixtures on " + format_iso_date(key.second));
  }
  return out;
}

// ---- random instances ---------------------------------------------------------

RandomCase random_case(std::mt19937_64& rng, const RandomSpec& spec) {
  auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  auto chance = [&](double p) { return std::bernoulli_distribution(p)(rng); };
  static const Experience kExp[] = {Experience::kLow, Experience::kMedium, Experience::kHigh};

  RandomCase c;
  std::vector<Date> dates;
  const int n_dates = uniform(1, spec.max_dates);
  for (int d = 0; d < n_dates; ++d) {
    dates.push_back(Date{std::chrono::sys_days(ymd(2009, 3, 7)) + std::chrono::days(7 * d)});
  }

  const int n_officials = uniform(spec.min_officials, spec.max_officials);
  for (int i = 0; i < n_officials; ++i) {
    Official o;
    char id[16];
    std::snprintf(id, sizeof id, "R%03d", i + 1);
    o.id = oid(id);
    o.name = std::string("Official ") + id;
    o.username = id;
    const bool ref = chance(0.8);
    if (ref) {
      // Weighted towards the top grades so that SPL fixtures are sometimes
      // fillable.
      const int cat = chance(0.5) ? uniform(1, 2) : uniform(1, 7);
      o.category = Category(cat);
      o.referee_experience = kExp[uniform(0, 2)];
    }
    if (!ref || chance(0.3)) o.observer_experience = kExp[uniform(0, 2)];
    add(c.snapshot, o);
    for (Date d : dates) {
      if (chance(spec.availability_rate)) c.snapshot.availability.insert({o.id, d});
    }
  }

  const int n_fixtures = uniform(spec.min_fixtures, spec.max_fixtures);
  for (int k = 0; k < n_fixtures; ++k) {
    char id[16];
    std::snprintf(id, sizeof id, "FX%03d", k + 1);
    const League league = kAllLeagues[static_cast<std::size_t>(uniform(0, 6))];
    add(c.snapshot, fixture(id, league, dates[static_cast<std::size_t>(uniform(0, n_dates - 1))],
                            std::string("Home") + id, std::string("Away") + id));
  }

  // Optional stored assignments that are valid on their own.
  const RequirementTable& table = RequirementTable::canonical();
  for (const auto& [id, f] : c.snapshot.fixtures) {
    if (!chance(spec.stored_rate)) continue;
    std::vector<Role> roles;
    for (Role r : kAllRoles) {
      if (table.at(f.league, r).used()) roles.push_back(r);
    }
    const Role role = roles[static_cast<std::size_t>(uniform(0, static_cast<int>(roles.size()) - 1))];
    const auto engaged = engaged_days(c.snapshot);
    for (const auto& [oid_, o] : c.snapshot.officials) {
      if (oracle_eligible(o, table.at(f.league, role)) && !engaged.count({o.id, f.date})) {
        c.snapshot.assignments.insert({id, o.id, role});
        break;
      }
    }
  }

  c.request.dates.insert(dates.begin(), dates.end());
  if (n_dates > 1 && chance(0.2)) c.request.dates.erase(dates.back());
  if (chance(0.3)) {
    c.request.leagues.clear();
    for (League l : kAllLeagues) {
      if (chance(0.5)) c.request.leagues.insert(l);
    }
    if (c.request.leagues.empty()) c.request.leagues.insert(League::kSPL);
  }
  c.request.algorithm = chance(0.5) ? Algorithm::kGreedy : Algorithm::kBacktracking;
  c.request.ordering = chance(0.5) ? OrderingPolicy::kBestFirst : OrderingPolicy::kReserveBest;
  c.request.require_availability = chance(0.5);
  return c;
}

Snapshot scale_instance() {
  Snapshot s;
  const Date day = ymd(2009, 8, 1);
  int fx = 0;
  auto fixtures = [&](League league, int n) {
    for (int k = 0; k < n; ++k) {
      char id[16];
      std::snprintf(id, sizeof id, "S%03d", ++fx);
      add(s, fixture(id, league, day, std::string("Home") + id, std::string("Away") + id));
    }
  };
  fixtures(League::kSPL, 6);
  fixtures(League::kSFL1, 5);
  fixtures(League::kSFL2, 5);
  fixtures(League::kSFL3, 5);
  fixtures(League::kJunior, 5);

  int n = 0;
  auto officials = [&](int count, std::optional<int> category, Experience ref_exp,
                       std::optional<Experience> obs_exp) {
    for (int k = 0; k < count; ++k) {
      char id[16];
      std::snprintf(id, sizeof id, "P%03d", ++n);
      Official o;
      o.id = oid(id);
      o.name = std::string("Pool official ") + id;
      o.username = id;
      if (category) {
        o.category = Category(*category);
        o.referee_experience = ref_exp;
      }
      o.observer_experience = obs_exp;
      add(s, o);
    }
  };
  officials(32, 1, Experience::kHigh, std::nullopt);
  officials(10, 1, Experience::kMedium, std::nullopt);
  officials(15, 2, Experience::kMedium, std::nullopt);
  officials(40, 3, Experience::kLow, std::nullopt);
  officials(10, 4, Experience::kLow, std::nullopt);
  officials(15, 6, Experience::kLow, std::nullopt);
  officials(24, std::nullopt, Experience::kHigh, Experience::kHigh);
  officials(10, std::nullopt, Experience::kHigh, Experience::kMedium);
  return s;
}

}  // namespace refalloc::testing
