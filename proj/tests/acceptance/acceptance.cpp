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


// Acceptance checks for the allocation core. Prints one PASS/FAIL line per
// criterion and exits nonzero if any fails.

#include <algorithm>
#include <chrono>
#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include "cli.hpp"
#include "refalloc/allocator.hpp"
#include "refalloc/data_file.hpp"
#include "refalloc/error.hpp"
#include "refalloc/rules.hpp"
#include "refalloc/store.hpp"
#include "support.hpp"

using namespace refalloc;
using namespace refalloc::testing;
using Clock = std::chrono::steady_clock;
using std::chrono::milliseconds;

namespace {

// Tolerances.
constexpr milliseconds kGoldenBudget{10};
constexpr milliseconds kDatasetBudget{100};
constexpr milliseconds kScaleBudget{5000};
constexpr int kScaleSlots = 110;
constexpr int kMaxObserverSlots2007 = 6;
constexpr int kSoundnessRuns = 1000;
constexpr int kOracleCases = 500;

constexpr Role REF = Role::kReferee;
constexpr Role AR1 = Role::kAssistantReferee1;
constexpr Role AR2 = Role::kAssistantReferee2;
constexpr Role FOURTH = Role::kFourthOfficial;
constexpr Role OBS = Role::kObserver;

struct Outcome {
  bool pass = true;
  std::string detail;

  // Records the first failure only.
  void expect(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

using std::chrono::microseconds;

template <typename F>
microseconds timed(F&& f) {
  const auto start = Clock::now();
  f();
  return std::chrono::duration_cast<microseconds>(Clock::now() - start);
}

std::string ms(microseconds d) {
  std::ostringstream out;
  out.precision(3);
  out << std::fixed << static_cast<double>(d.count()) / 1000.0 << " ms";
  return out.str();
}

std::set<Assignment> as_set(const std::vector<Assignment>& v) { return {v.begin(), v.end()}; }

ValidateOptions placement_only(bool availability) {
  ValidateOptions o;
  o.check_required_roles = false;
  o.check_availability = availability;
  return o;
}

// Empty when `f` succeeds.
std::optional<ErrorCode> code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

struct CliRun {
  int rc = -1;
  std::string out;
};

CliRun menu(const std::string& store, const std::string& input) {
  const char* argv[] = {"refalloc", "--store", store.c_str()};
  std::istringstream in(input);
  std::ostringstream out, err;
  CliRun r;
  r.rc = tools::run_cli(3, argv, in, out, err);
  r.out = out.str();
  return r;
}

Outcome backtracking_golden() {
  Outcome o;
  GoldenInstance g;
  make_backtracking_instance(g);
  AllocationResult r;
  const microseconds t = timed([&] { r = allocate_backtracking(g.request, g.snapshot); });
  o.expect(r.complete, "not complete");
  o.expect(to_grid(r.assignments) ==
               Grid{{"M1", {{REF, "A1"}, {AR1, "C1"}}}, {"M2", {{REF, "B1"}, {AR1, "D1"}}}},
           "unexpected assignment");
  o.expect(!r.dead_ends.empty() &&
               r.dead_ends.front() == std::vector<Assignment>{{fid("M1"), oid("A1"), REF},
                                                              {fid("M1"), oid("B1"), AR1}},
           "dead end M1:(A,B) not visited first");
  o.expect(t < kGoldenBudget, "took " + ms(t));
  if (o.pass) o.detail = std::to_string(r.stats.nodes) + " nodes, " + ms(t);
  return o;
}

Outcome greedy_golden() {
  Outcome o;
  GoldenInstance g;
  make_greedy_instance(g);
  const std::map<OrderingPolicy, Grid> expected = {
      {OrderingPolicy::kBestFirst,
       {{"M1", {{REF, "A1"}, {AR1, "C1"}, {AR2, "D1"}}},
        {"M2", {{REF, "B1"}, {AR1, "E1"}, {AR2, "F1"}}}}},
      {OrderingPolicy::kReserveBest,
       {{"M1", {{REF, "A1"}, {AR1, "C1"}, {AR2, "D1"}}},
        {"M2", {{REF, "B1"}, {AR1, "F1"}, {AR2, "G1"}}}}}};
  ValidateOptions opts;
  opts.table = &g.table;
  microseconds worst{0};
  for (const auto& [ordering, grid] : expected) {
    g.request.ordering = ordering;
    AllocationResult r;
    worst = std::max(worst, timed([&] { r = allocate_greedy(g.request, g.snapshot); }));
    const std::string name(to_string(ordering));
    o.expect(to_grid(r.assignments) == grid, name + ": unexpected assignment");
    o.expect(validate(as_set(r.assignments), g.snapshot, opts).empty(), name + ": violations");
    o.expect(as_set(r.assignments) == as_set(reference_greedy(g.snapshot, g.request, g.table)),
             name + ": differs from the reference restatement");
  }
  o.expect(brute_force_feasible(g.snapshot, g.request, g.table), "instance not feasible");
  o.expect(worst < kGoldenBudget, "took " + ms(worst));
  if (o.pass) o.detail = "both orderings, " + ms(worst);
  return o;
}

Outcome dataset_2007() {
  Outcome o;
  const Snapshot s = load_dataset("sfa_2007.csv");
  int referees = 0, observers = 0;
  for (const auto& [id, official] : s.officials) {
    referees += official.category.has_value();
    observers += official.observer_experience.has_value();
  }
  o.expect(referees == 20 && observers == 6 && s.fixtures.size() == 7, "dataset size");

  AllocationRequest req;
  req.dates = {ymd(2007, 12, 1)};
  req.algorithm = Algorithm::kGreedy;
  req.ordering = OrderingPolicy::kReserveBest;
  req.require_availability = false;
  AllocationResult r;
  const microseconds t = timed([&] { r = allocate(req, s); });

  const std::map<std::string, int> required = {{"SPL001", 5}, {"SPL002", 5}, {"SLF001", 3},
                                               {"J001", 3},   {"J002", 3},   {"Y001", 1},
                                               {"Y002", 1}};
  std::map<std::string, int> filled;
  int observer_best_effort = 0;
  for (const Assignment& a : r.assignments) {
    const Presence p = requirement_for(s.fixtures.at(a.fixture).league, a.role).presence;
    if (p == Presence::kRequired) ++filled[a.fixture.str()];
    if (p == Presence::kBestEffort && a.role == OBS) ++observer_best_effort;
  }
  o.expect(r.complete && filled == required, "Required slots not all filled");
  o.expect(validate(as_set(r.assignments), s).empty(), "violations");
  o.expect(observer_best_effort <= kMaxObserverSlots2007, "too many observer slots");
  o.expect(t < kDatasetBudget, "took " + ms(t));
  if (o.pass) {
    o.detail = std::to_string(r.assignments.size()) + " assignments, " +
               std::to_string(observer_best_effort) + " best-effort observers, " + ms(t);
  }
  return o;
}

Outcome scale() {
  Outcome o;
  const Snapshot s = scale_instance();
  AllocationRequest req;
  req.dates = {ymd(2009, 8, 1)};
  AllocationResult r;
  const microseconds t = timed([&] { r = allocate(req, s); });
  o.expect(r.complete && r.unfilled.empty(), "slots left unfilled");
  o.expect(static_cast<int>(r.assignments.size()) == kScaleSlots,
           std::to_string(r.assignments.size()) + " slots filled");
  o.expect(validate(as_set(r.assignments), s).empty(), "violations");
  o.expect(t <= kScaleBudget, "took " + ms(t));
  if (o.pass) o.detail = std::to_string(r.assignments.size()) + " slots, " + ms(t);
  return o;
}

Outcome no_double_bookings() {
  Outcome o;
  std::mt19937_64 rng(20091);
  RandomSpec spec;
  spec.max_fixtures = 8;
  spec.max_officials = 20;
  spec.max_dates = 3;
  spec.stored_rate = 0.3;
  int runs = 0, with_availability = 0;
  while (runs < kSoundnessRuns && o.pass) {
    RandomCase c = random_case(rng, spec);
    for (Algorithm alg : {Algorithm::kGreedy, Algorithm::kBacktracking}) {
      for (OrderingPolicy ord : {OrderingPolicy::kBestFirst, OrderingPolicy::kReserveBest}) {
        c.request.algorithm = alg;
        c.request.ordering = ord;
        const AllocationResult r = allocate(c.request, c.snapshot);
        std::set<Assignment> all = c.snapshot.assignments;
        all.insert(r.assignments.begin(), r.assignments.end());
        const std::string run = "run " + std::to_string(runs);
        o.expect(double_bookings(c.snapshot, all).empty(), run + ": double booking");
        o.expect(validate(all, c.snapshot, placement_only(false)).empty(), run + ": violations");
        o.expect(validate(as_set(r.created), c.snapshot,
                          placement_only(c.request.require_availability))
                     .empty(),
                 run + ": availability violations");
        with_availability += c.request.require_availability;
        ++runs;
      }
    }
  }
  o.expect(with_availability > 0 && with_availability < runs, "availability not varied");
  if (o.pass) o.detail = std::to_string(runs) + " runs";
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  std::mt19937_64 rng(77);
  const RandomSpec spec;  // at most 4 fixtures and 12 officials
  int feasible = 0;
  for (int i = 0; i < kOracleCases; ++i) {
    RandomCase c = random_case(rng, spec);
    c.request.algorithm = Algorithm::kBacktracking;
    const bool oracle = brute_force_feasible(c.snapshot, c.request, RequirementTable::canonical());
    const AllocationResult r = allocate(c.request, c.snapshot);
    o.expect(r.complete == oracle && r.infeasible == !oracle,
             "case " + std::to_string(i) + " disagrees with enumeration");
    feasible += oracle;
  }
  if (o.pass) {
    o.detail = std::to_string(kOracleCases) + " cases, " + std::to_string(feasible) + " feasible";
  }
  return o;
}

Outcome change_contract() {
  Outcome o;
  TempDir dir;
  const std::filesystem::path file = dir / "store.csv";
  Snapshot base = load_dataset("sfa_2007.csv");
  base.assignments = published_2007_assignment();
  write_data_file(base, file);
  Store store(file);

  const auto attempt = [&](const FixtureId& f, const OfficialId& from, const OfficialId& to,
                           Role role) {
    return code_of([&] {
      store.update([&](Snapshot& s) { change_assignment(s, f, from, to, role); });
      store.save();
    });
  };

  const std::string bytes = read_text(file);
  const std::uint64_t version = store.version();
  o.expect(attempt(fid("SPL001"), oid("R001"), oid("R003"), REF) == ErrorCode::kNotAssigned,
           "NotAssigned not raised");
  o.expect(attempt(fid("SPL001"), oid("R002"), oid("R006"), REF) ==
               ErrorCode::kIneligibleReplacement,
           "IneligibleReplacement not raised");
  o.expect(attempt(fid("SPL001"), oid("R002"), oid("R001"), REF) ==
               ErrorCode::kDoubleBookedReplacement,
           "DoubleBookedReplacement not raised");
  store.save();
  o.expect(read_text(file) == bytes && store.version() == version, "store changed by an error");

  o.expect(attempt(fid("J002"), oid("R015"), oid("R013"), AR1) == std::nullopt,
           "replacement failed");
  const Snapshot after = read_data_file(file);
  o.expect(validate(after.assignments, after).empty(), "store does not validate after change");

  // A new Youth fixture on the same day: R015 must be the only free
  // candidate, and the allocator must pick them.
  Snapshot next = after;
  add(next, fixture("Y003", League::kYouth, ymd(2007, 12, 1)));
  std::set<OfficialId> busy;
  for (const Assignment& a : next.assignments) busy.insert(a.official);
  std::vector<OfficialId> candidates;
  for (const auto& [id, official] : next.officials) {
    if (!busy.contains(id) && oracle_eligible(official, requirement_for(League::kYouth, REF))) {
      candidates.push_back(id);
    }
  }
  o.expect(candidates == std::vector<OfficialId>{oid("R015")}, "R015 is not the only candidate");
  AllocationRequest req;
  req.dates = {ymd(2007, 12, 1)};
  req.leagues = {League::kYouth};
  const AllocationResult r = allocate(req, next);
  o.expect(r.created == std::vector<Assignment>{{fid("Y003"), oid("R015"), REF}},
           "freed official not chosen");
  if (o.pass) o.detail = "three errors byte-identical, freed official reused";
  return o;
}

Outcome pre_assignment() {
  Outcome o;
  TempDir dir;
  const std::string good = (dir / "good.csv").string();
  std::filesystem::copy_file(data_path("spl_2008.csv"), good);
  const CliRun r = menu(good, "2\n7\nspl001\n11\n11\n08\nr008\nr075\nr076\nr007\ne001\n10\n5\n");
  const Snapshot s = read_data_file(good);
  o.expect(r.rc == 0, "menu exit code " + std::to_string(r.rc));
  o.expect(s.assignments == std::set<Assignment>{{fid("SPL001"), oid("R008"), REF},
                                                 {fid("SPL001"), oid("R075"), AR1},
                                                 {fid("SPL001"), oid("R076"), AR2},
                                                 {fid("SPL001"), oid("R007"), FOURTH},
                                                 {fid("SPL001"), oid("E001"), OBS}},
           "stored assignments differ");

  const std::string bad = (dir / "bad.csv").string();
  std::filesystem::copy_file(data_path("spl_2008.csv"), bad);
  const std::string before = format_data(read_data_file(bad));
  const CliRun rejected =
      menu(bad, "2\n7\nspl001\n11\n11\n08\nr070\nr075\nr076\nr007\ne001\n10\n5\n");
  o.expect(rejected.out.find("Error: invalid pre-assignment: SPL001 Referee") != std::string::npos,
           "ineligible referee not reported");
  o.expect(format_data(read_data_file(bad)) == before, "store changed by a rejected slot");
  if (o.pass) o.detail = "5 SPL001 assignments, ineligible referee rejected";
  return o;
}

// Replaces line `row` (1-based) of `text` and returns the new text.
std::string with_line(const std::string& text, std::size_t row, const std::string& line) {
  std::istringstream in(text);
  std::ostringstream out;
  std::string current;
  for (std::size_t n = 1; std::getline(in, current); ++n) out << (n == row ? line : current) << '\n';
  return out.str();
}

// First line starting with `prefix`, 1-based; 0 if none.
std::size_t line_of(const std::string& text, const std::string& prefix) {
  std::istringstream in(text);
  std::string current;
  for (std::size_t n = 1; std::getline(in, current); ++n) {
    if (current.starts_with(prefix)) return n;
  }
  return 0;
}

Outcome round_trip() {
  Outcome o;
  TempDir dir;
  Snapshot full = load_dataset("sfa_2007.csv");
  full.assignments = published_2007_assignment();
  full.availability.insert({oid("R001"), ymd(2007, 12, 1)});
  write_data_file(full, dir / "seed.csv");

  Store source;
  source.import_data(dir / "seed.csv");
  source.export_data(dir / "export.csv");
  Store target;
  target.import_data(dir / "export.csv");
  o.expect(format_data(*target.snapshot()) == format_data(full), "snapshot differs after import");
  o.expect(target.snapshot()->assignments == full.assignments, "assignments differ");

  const std::string text = format_data(full);
  const std::size_t assignment = line_of(text, "SPL001,R002,Referee");
  const std::size_t fixture_row = line_of(text, "SPL,");
  const std::size_t official_row = line_of(text, "R002,");
  struct Crafted {
    std::size_t row;
    std::string line;
    std::string message;
  };
  std::vector<Crafted> crafted = {
      {assignment, "SPL001,R999,Referee", "assignment references unknown official R999"},
      {assignment, "SPL999,R002,Referee", "assignment references unknown fixture"},
      {assignment, "SPL001,R002,Linesman", "unknown role"},
      {fixture_row, "XPL,Edinburgh,2007-12-01,14:00,Hearts,Hibernian,SPL001", "unknown league"},
      {official_row, "R001,Someone Else,1,High,,someone,", "duplicate official id R001"},
  };
  const std::string kept = format_data(*target.snapshot());
  for (const Crafted& c : crafted) {
    if (c.row == 0) {
      o.expect(false, "crafted row not found for: " + c.message);
      continue;
    }
    const std::filesystem::path path = dir / "crafted.csv";
    std::ofstream(path) << with_line(text, c.row, c.line);
    std::string message;
    try {
      target.import_data(path);
    } catch (const Error& e) {
      message = e.what();
    }
    const std::string expected =
        path.string() + ": line " + std::to_string(c.row) + ": " + c.message;
    o.expect(message.starts_with(expected), "expected '" + expected + "', got '" + message + "'");
  }
  o.expect(format_data(*target.snapshot()) == kept, "failed import changed the store");
  if (o.pass) o.detail = "identical round trip, " + std::to_string(crafted.size()) + " bad files rejected";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"backtracking golden instance", backtracking_golden},
      {"greedy golden instance", greedy_golden},
      {"2007 dataset", dataset_2007},
      {"scale", scale},
      {"no double bookings over random runs", no_double_bookings},
      {"backtracking matches exhaustive enumeration", oracle_equivalence},
      {"change assignment contract", change_contract},
      {"pre-assignment menu trace", pre_assignment},
      {"store round trip", round_trip},
  };
  int failures = 0;
  int number = 0;
  for (const auto& [name, check] : criteria) {
    ++number;
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::cout << (o.pass ? "PASS " : "FAIL ") << number << ' ' << name << ": " << o.detail << '\n';
  }
  return failures == 0 ? 0 : 1;
}
