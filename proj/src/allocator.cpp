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

#include "refalloc/allocator.hpp"

#include <algorithm>
#include <functional>
#include <tuple>

#include "text.hpp"

namespace refalloc {

std::string_view to_string(OrderingPolicy p) {
  return p == OrderingPolicy::kBestFirst ? "best-first" : "reserve-best";
}

std::string_view to_string(Algorithm a) {
  return a == Algorithm::kGreedy ? "greedy" : "backtracking";
}

std::optional<OrderingPolicy> parse_ordering(std::string_view s) {
  std::string key;
  for (char c : text::lower(text::trim(s))) {
    if (c != '-' && c != '_' && c != ' ') key.push_back(c);
  }
  if (key == "bestfirst") return OrderingPolicy::kBestFirst;
  if (key == "reservebest") return OrderingPolicy::kReserveBest;
  return std::nullopt;
}

std::optional<Algorithm> parse_algorithm(std::string_view s) {
  const std::string key = text::lower(text::trim(s));
  if (key == "greedy") return Algorithm::kGreedy;
  if (key == "backtracking") return Algorithm::kBacktracking;
  return std::nullopt;
}

namespace {

using Clock = std::chrono::steady_clock;

struct Slot {
  Date date;
  League league;
  Role role;
  FixtureId fixture;
  Presence presence;
};

// Smaller is better on both scales.
int grade(const Official& o, Role role) {
  if (role == Role::kObserver) {
    switch (o.observer_experience.value_or(Experience::kLow)) {
      case Experience::kHigh: return 1;
      case Experience::kMedium: return 2;
      case Experience::kLow: return 3;
    }
  }
  return o.category ? o.category->value() : Category::kWorst + 1;
}

std::string slot_label(const Assignment& a) {
  return a.fixture.str() + " " + std::string(to_string(a.role)) + "=" + a.official.str();
}

// Everything a run needs: the slots in visiting order, who is engaged on
// which date, and which slots already hold someone.
class Workspace {
 public:
  Workspace(const AllocationRequest& request, const Snapshot& snapshot)
      : req_(request),
        snap_(snapshot),
        table_(request.table ? *request.table : RequirementTable::canonical()) {
    for (const auto& [id, o] : snap_.officials) {
      index_.emplace(id, static_cast<int>(officials_.size()));
      officials_.push_back(&o);
    }
    run_count_.assign(officials_.size(), 0);

    // Fixtures in scope, grouped so that iteration gives date, league, id.
    std::map<std::tuple<Date, League, FixtureId>, const Fixture*> ordered;
    for (const auto& [id, fx] : snap_.fixtures) {
      if (req_.dates.contains(fx.date) && req_.leagues.contains(fx.league)) {
        ordered.emplace(std::tuple{fx.date, fx.league, id}, &fx);
        scope_.insert(id);
      }
    }
    for (auto it = ordered.begin(); it != ordered.end();) {
      auto group_end = it;
      while (group_end != ordered.end() &&
             std::get<0>(group_end->first) == std::get<0>(it->first) &&
             std::get<1>(group_end->first) == std::get<1>(it->first)) {
        ++group_end;
      }
      for (Role role : kAllRoles) {
        const Presence p = table_.at(std::get<1>(it->first), role).presence;
        if (p == Presence::kNotUsed) continue;
        for (auto f = it; f != group_end; ++f) {
          slots_.push_back({f->second->date, f->second->league, role, f->second->id, p});
        }
      }
      it = group_end;
    }

    for (const Assignment& a : snap_.assignments) {
      const Fixture* fx = snap_.find_fixture(a.fixture);
      auto idx = index_.find(a.official);
      if (!fx || idx == index_.end()) continue;
      engage(fx->date, idx->second);
      if (scope_.contains(a.fixture)) filled_[{a.fixture, a.role}] = idx->second;
    }
  }

  const RequirementTable& table() const { return table_; }
  const std::vector<Slot>& slots() const { return slots_; }
  const Snapshot& snapshot() const { return snap_; }
  const AllocationRequest& request() const { return req_; }

  bool filled(const Slot& s) const { return filled_.contains({s.fixture, s.role}); }

  // Validates the request's pre-assignments and pins them. Throws with one
  // detail line per rejected entry.
  void pin_pre_assignments() {
    std::vector<std::string> problems = check_manual(req_.pre_assignments);
    if (!problems.empty()) {
      const std::string message = "invalid pre-assignment: " + problems.front();
      throw Error(ErrorCode::kInvalidPreAssignment, message, std::move(problems));
    }
    for (const Assignment& a : req_.pre_assignments) {
      const int i = index_.at(a.official);
      if (!filled_.contains({a.fixture, a.role})) {
        filled_[{a.fixture, a.role}] = i;
        engage(snap_.fixtures.at(a.fixture).date, i);
        ++run_count_[static_cast<std::size_t>(i)];
        created_.push_back(a);
      }
    }
  }

  std::vector<std::string> check_manual(const std::vector<Assignment>& manual) const {
    std::vector<std::string> problems;
    std::map<std::pair<FixtureId, Role>, OfficialId> manual_slots;
    std::map<std::pair<OfficialId, Date>, FixtureId> manual_days;
    for (const Assignment& a : manual) {
      const std::string label = slot_label(a);
      const Fixture* fx = snap_.find_fixture(a.fixture);
      const Official* off = snap_.find_official(a.official);
      if (!fx) {
        problems.push_back(label + ": unknown fixture");
        continue;
      }
      if (!off) {
        problems.push_back(label + ": unknown official");
        continue;
      }
      if (!scope_.contains(a.fixture)) {
        problems.push_back(label + ": fixture is outside the requested dates or leagues");
        continue;
      }
      const RoleRequirement& req = table_.at(fx->league, a.role);
      if (!req.used()) {
        problems.push_back(label + ": " + std::string(display_name(fx->league)) +
                           " fixtures have no " + std::string(to_string(a.role)));
        continue;
      }
      if (!is_eligible(*off, req)) {
        problems.push_back(label + ": " + off->name + " is not eligible for this slot");
      }
      bool clash = false;
      for (const Assignment& other : snap_.assignments) {
        if (other == a) continue;
        if (other.fixture == a.fixture && other.role == a.role) {
          problems.push_back(label + ": slot already held by " + other.official.str());
          clash = true;
          break;
        }
        if (other.official != a.official) continue;
        const Fixture* ofx = snap_.find_fixture(other.fixture);
        if (ofx && ofx->date == fx->date) {
          problems.push_back(label + ": " + a.official.str() + " already works " +
                             other.fixture.str() + " on " + format_iso_date(fx->date));
          clash = true;
          break;
        }
      }
      if (!clash) {
        auto [it, fresh] = manual_slots.emplace(std::pair{a.fixture, a.role}, a.official);
        if (!fresh) {
          if (it->second != a.official) problems.push_back(label + ": slot given twice");
        } else if (auto [jt, free_day] =
                       manual_days.emplace(std::pair{a.official, fx->date}, a.fixture);
                   !free_day) {
          problems.push_back(label + ": " + a.official.str() + " is also picked for " +
                             jt->second.str() + " on " + format_iso_date(fx->date));
        }
      }
      if (req_.require_availability && !snap_.is_available(a.official, fx->date)) {
        problems.push_back(label + ": " + a.official.str() + " has not declared availability for " +
                           format_iso_date(fx->date));
      }
    }
    return problems;
  }

  bool engaged(Date d, int i) const {
    auto it = engaged_.find(d);
    return it != engaged_.end() && it->second[static_cast<std::size_t>(i)];
  }

  // Eligible and available; ignores who is engaged.
  std::vector<int> static_candidates(const Slot& s) const {
    const RoleRequirement& req = table_.at(s.league, s.role);
    std::vector<int> out;
    for (std::size_t i = 0; i < officials_.size(); ++i) {
      const Official& o = *officials_[i];
      if (!is_eligible(o, req)) continue;
      if (req_.require_availability && !snap_.is_available(o.id, s.date)) continue;
      out.push_back(static_cast<int>(i));
    }
    return out;
  }

  // Strict weak order of preference for `role` under the request's policy.
  bool prefer(int a, int b, Role role) const {
    const int ga = grade(*officials_[static_cast<std::size_t>(a)], role);
    const int gb = grade(*officials_[static_cast<std::size_t>(b)], role);
    if (ga != gb) {
      return req_.ordering == OrderingPolicy::kBestFirst ? ga < gb : ga > gb;
    }
    const int ca = run_count_[static_cast<std::size_t>(a)];
    const int cb = run_count_[static_cast<std::size_t>(b)];
    if (ca != cb) return ca < cb;
    return a < b;  // officials_ is in id order
  }

  std::vector<int> ordered_free(const Slot& s, const std::vector<int>& pool) const {
    std::vector<int> out;
    for (int i : pool) {
      if (!engaged(s.date, i)) out.push_back(i);
    }
    std::sort(out.begin(), out.end(), [&](int a, int b) { return prefer(a, b, s.role); });
    return out;
  }

  std::optional<int> best_free(const Slot& s) const {
    std::optional<int> best;
    for (int i : static_candidates(s)) {
      if (engaged(s.date, i)) continue;
      if (!best || prefer(i, *best, s.role)) best = i;
    }
    return best;
  }

  void place(const Slot& s, int i) {
    filled_[{s.fixture, s.role}] = i;
    engage(s.date, i);
    ++run_count_[static_cast<std::size_t>(i)];
    created_.push_back({s.fixture, officials_[static_cast<std::size_t>(i)]->id, s.role});
  }

  void unplace(const Slot& s, int i) {
    filled_.erase({s.fixture, s.role});
    engaged_[s.date][static_cast<std::size_t>(i)] = 0;
    --run_count_[static_cast<std::size_t>(i)];
    created_.pop_back();
  }

  const std::vector<Assignment>& created() const { return created_; }

  AllocationResult finish(std::vector<UnfilledSlot> unfilled, Clock::time_point start) const {
    AllocationResult r;
    for (const auto& [slot, i] : filled_) {
      r.assignments.push_back({slot.first, officials_[static_cast<std::size_t>(i)]->id,
                               slot.second});
      const League league = snap_.fixtures.at(slot.first).league;
      ++r.stats.filled[league][slot.second];
    }
    std::sort(r.assignments.begin(), r.assignments.end());
    r.created = created_;
    r.unfilled = std::move(unfilled);
    r.complete = std::none_of(r.unfilled.begin(), r.unfilled.end(), [](const UnfilledSlot& u) {
      return u.presence == Presence::kRequired;
    });
    r.stats.created = created_.size();
    r.stats.elapsed = std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - start);
    return r;
  }

 private:
  void engage(Date d, int i) {
    auto& row = engaged_[d];
    if (row.empty()) row.assign(officials_.size(), 0);
    row[static_cast<std::size_t>(i)] = 1;
  }

  const AllocationRequest& req_;
  const Snapshot& snap_;
  const RequirementTable& table_;
  std::vector<const Official*> officials_;
  std::map<OfficialId, int> index_;
  std::set<FixtureId> scope_;
  std::vector<Slot> slots_;
  std::map<std::pair<FixtureId, Role>, int> filled_;
  std::map<Date, std::vector<char>> engaged_;
  std::vector<int> run_count_;
  std::vector<Assignment> created_;
};

// Kuhn's augmenting paths: can every slot in `pools` get a distinct
// official? `pools[k]` lists the free candidates of slot k.
bool all_matchable(const std::vector<std::vector<int>>& pools, std::size_t n_officials) {
  std::vector<int> owner(n_officials, -1);
  std::vector<char> seen;
  std::function<bool(std::size_t)> augment = [&](std::size_t k) {
    for (int i : pools[k]) {
      if (seen[static_cast<std::size_t>(i)]) continue;
      seen[static_cast<std::size_t>(i)] = 1;
      int& o = owner[static_cast<std::size_t>(i)];
      if (o < 0 || augment(static_cast<std::size_t>(o))) {
        o = static_cast<int>(k);
        return true;
      }
    }
    return false;
  };
  for (std::size_t k = 0; k < pools.size(); ++k) {
    seen.assign(n_officials, 0);
    if (!augment(k)) return false;
  }
  return true;
}

class Search {
 public:
  Search(Workspace& ws, std::vector<Slot> open, AllocationResult& trace_sink,
         std::uint64_t& nodes)
      : ws_(ws), open_(std::move(open)), sink_(trace_sink), nodes_(nodes) {
    for (const Slot& s : open_) pools_.push_back(ws_.static_candidates(s));
    n_officials_ = ws_.snapshot().officials.size();
  }

  bool run() {
    if (ws_.request().lookahead && !matchable_from(0)) return false;
    return dfs(0);
  }

 private:
  bool dfs(std::size_t k) {
    if (k == open_.size()) return true;
    const Slot& s = open_[k];
    const std::vector<int> cands = ws_.ordered_free(s, pools_[k]);
    if (cands.empty()) {
      record_dead_end();
      return false;
    }
    for (int c : cands) {
      if (++nodes_ > ws_.request().node_limit) {
        throw Error(ErrorCode::kSearchBudgetExceeded,
                    "search stopped after " + std::to_string(ws_.request().node_limit) +
                        " nodes without an answer");
      }
      ws_.place(s, c);
      if (ws_.request().lookahead && !matchable_from(k + 1)) {
        record_dead_end();
      } else if (dfs(k + 1)) {
        return true;
      }
      ws_.unplace(s, c);
    }
    return false;
  }

  bool matchable_from(std::size_t k) const {
    std::vector<std::vector<int>> free;
    free.reserve(open_.size() - k);
    for (std::size_t j = k; j < open_.size(); ++j) {
      std::vector<int> pool;
      for (int i : pools_[j]) {
        if (!ws_.engaged(open_[j].date, i)) pool.push_back(i);
      }
      if (pool.empty()) return false;
      free.push_back(std::move(pool));
    }
    return all_matchable(free, n_officials_);
  }

  void record_dead_end() {
    if (ws_.request().trace) sink_.dead_ends.push_back(ws_.created());
  }

  Workspace& ws_;
  std::vector<Slot> open_;
  std::vector<std::vector<int>> pools_;
  std::size_t n_officials_ = 0;
  AllocationResult& sink_;
  std::uint64_t& nodes_;
};

void validate_request(const AllocationRequest& r) {
  if (r.dates.empty()) throw Error(ErrorCode::kInvalidArgument, "no dates requested");
  if (r.leagues.empty()) throw Error(ErrorCode::kInvalidArgument, "no leagues requested");
}

}  // namespace

AllocationResult allocate_greedy(const AllocationRequest& request, const Snapshot& snapshot) {
  const auto start = Clock::now();
  validate_request(request);
  Workspace ws(request, snapshot);
  ws.pin_pre_assignments();

  std::vector<UnfilledSlot> unfilled;
  for (const Slot& s : ws.slots()) {
    if (ws.filled(s)) continue;
    if (auto best = ws.best_free(s)) {
      ws.place(s, *best);
    } else {
      unfilled.push_back({s.fixture, s.role, s.presence});
    }
  }
  return ws.finish(std::move(unfilled), start);
}

AllocationResult allocate_backtracking(const AllocationRequest& request,
                                       const Snapshot& snapshot) {
  const auto start = Clock::now();
  validate_request(request);
  Workspace ws(request, snapshot);
  ws.pin_pre_assignments();

  // Dates never share an official, so each date is searched on its own;
  // only the tie-break counters carry over.
  std::vector<std::vector<Slot>> by_date;
  std::vector<UnfilledSlot> open_required;
  for (const Slot& s : ws.slots()) {
    if (ws.filled(s) || s.presence != Presence::kRequired) continue;
    if (by_date.empty() || by_date.back().front().date != s.date) by_date.emplace_back();
    by_date.back().push_back(s);
    open_required.push_back({s.fixture, s.role, s.presence});
  }

  AllocationResult trace;
  std::uint64_t nodes = 0;
  bool feasible = true;
  for (auto& group : by_date) {
    Search search(ws, std::move(group), trace, nodes);
    if (!search.run()) {
      feasible = false;
      break;
    }
  }

  if (!feasible) {
    Workspace untouched(request, snapshot);
    untouched.pin_pre_assignments();
    AllocationResult r = untouched.finish(std::move(open_required), start);
    r.infeasible = true;
    r.dead_ends = std::move(trace.dead_ends);
    r.stats.nodes = nodes;
    return r;
  }

  std::vector<UnfilledSlot> unfilled;
  for (const Slot& s : ws.slots()) {
    if (ws.filled(s)) continue;
    if (auto best = ws.best_free(s)) {
      ws.place(s, *best);
    } else {
      unfilled.push_back({s.fixture, s.role, s.presence});
    }
  }
  AllocationResult r = ws.finish(std::move(unfilled), start);
  r.dead_ends = std::move(trace.dead_ends);
  r.stats.nodes = nodes;
  return r;
}

AllocationResult allocate(const AllocationRequest& request, const Snapshot& snapshot) {
  return request.algorithm == Algorithm::kGreedy ? allocate_greedy(request, snapshot)
                                                 : allocate_backtracking(request, snapshot);
}

void apply(const AllocationResult& result, Snapshot& snapshot) {
  snapshot.assignments.insert(result.assignments.begin(), result.assignments.end());
}

Assignment change_assignment(Snapshot& snap, const FixtureId& fixture,
                             const OfficialId& old_official, const OfficialId& new_official,
                             Role role, const ChangeOptions& options) {
  const RequirementTable& table = options.table ? *options.table : RequirementTable::canonical();
  const Fixture* fx = snap.find_fixture(fixture);
  if (!fx) throw Error(ErrorCode::kUnknownReference, "no fixture " + fixture.str());
  const Assignment old{fixture, old_official, role};
  if (!snap.assignments.contains(old)) {
    throw Error(ErrorCode::kNotAssigned, old_official.str() + " is not the " +
                                             std::string(to_string(role)) + " of " +
                                             fixture.str());
  }
  if (options.expected_date && *options.expected_date != fx->date) {
    throw Error(ErrorCode::kDateMismatch, fixture.str() + " is played on " +
                                              format_iso_date(fx->date) + ", not " +
                                              format_iso_date(*options.expected_date));
  }
  const Official* replacement = snap.find_official(new_official);
  if (!replacement) throw Error(ErrorCode::kUnknownReference, "no official " + new_official.str());
  if (!is_eligible(*replacement, table.at(fx->league, role))) {
    throw Error(ErrorCode::kIneligibleReplacement,
                replacement->name + " (" + new_official.str() + ") is not eligible as " +
                    std::string(to_string(role)) + " in " +
                    std::string(display_name(fx->league)));
  }
  for (const Assignment& a : snap.assignments) {
    if (a == old || a.official != new_official) continue;
    const Fixture* other = snap.find_fixture(a.fixture);
    if (other && other->date == fx->date) {
      throw Error(ErrorCode::kDoubleBookedReplacement,
                  new_official.str() + " already works " + a.fixture.str() + " on " +
                      format_iso_date(fx->date));
    }
  }
  if (options.require_availability && !snap.is_available(new_official, fx->date)) {
    throw Error(ErrorCode::kUnavailableReplacement,
                new_official.str() + " has not declared availability for " +
                    format_iso_date(fx->date));
  }
  const Assignment replacement_slot{fixture, new_official, role};
  snap.assignments.erase(old);
  snap.assignments.insert(replacement_slot);
  return replacement_slot;
}

AllocationResult pre_assign(const ManualSlots& slots, bool auto_fill,
                            const AllocationRequest& request, const Snapshot& snapshot) {
  const auto start = Clock::now();
  validate_request(request);
  if (slots.empty() && !auto_fill) {
    throw Error(ErrorCode::kInvalidArgument, "no slots given");
  }
  AllocationRequest with_manual = request;
  for (const auto& [slot, official] : slots) {
    with_manual.pre_assignments.push_back({slot.first, official, slot.second});
  }
  if (auto_fill) return allocate(with_manual, snapshot);

  Workspace ws(with_manual, snapshot);
  ws.pin_pre_assignments();
  AllocationResult r;
  std::set<FixtureId> touched;
  for (const Assignment& a : with_manual.pre_assignments) {
    r.assignments.push_back(a);
    if (!snapshot.assignments.contains(a)) r.created.push_back(a);
    touched.insert(a.fixture);
  }
  std::sort(r.assignments.begin(), r.assignments.end());
  for (const Slot& s : ws.slots()) {
    if (touched.contains(s.fixture) && !ws.filled(s)) {
      r.unfilled.push_back({s.fixture, s.role, s.presence});
    }
  }
  r.complete = std::none_of(r.unfilled.begin(), r.unfilled.end(), [](const UnfilledSlot& u) {
    return u.presence == Presence::kRequired;
  });
  for (const Assignment& a : r.assignments) {
    ++r.stats.filled[snapshot.fixtures.at(a.fixture).league][a.role];
  }
  r.stats.created = r.created.size();
  r.stats.elapsed = std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - start);
  return r;
}

}  // namespace refalloc
