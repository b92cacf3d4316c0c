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

#include "refalloc/rules.hpp"

#include <algorithm>
#include <map>
#include <utility>

namespace refalloc {

std::string_view to_string(Presence p) {
  switch (p) {
    case Presence::kRequired: return "Required";
    case Presence::kBestEffort: return "BestEffort";
    case Presence::kNotUsed: return "NotUsed";
  }
  return "";
}

std::string_view to_string(ViolationKind k) {
  switch (k) {
    case ViolationKind::kIneligibleCategory: return "IneligibleCategory";
    case ViolationKind::kIneligibleExperience: return "IneligibleExperience";
    case ViolationKind::kDoubleBooking: return "DoubleBooking";
    case ViolationKind::kMissingRequiredRole: return "MissingRequiredRole";
    case ViolationKind::kDuplicateRole: return "DuplicateRole";
    case ViolationKind::kUnknownReference: return "UnknownReference";
    case ViolationKind::kNotAvailable: return "NotAvailable";
  }
  return "";
}

RequirementTable::RequirementTable() {
  for (League l : kAllLeagues) {
    for (Role r : kAllRoles) {
      RoleRequirement& e = entries_[index(l, r)];
      e.league = l;
      e.role = r;
    }
  }
}

std::size_t RequirementTable::index(League league, Role role) {
  return static_cast<std::size_t>(league) * kAllRoles.size() +
         static_cast<std::size_t>(role);
}

const RoleRequirement& RequirementTable::at(League league, Role role) const {
  return entries_[index(league, role)];
}

void RequirementTable::set(RoleRequirement requirement) {
  if (!requirement.used()) {
    requirement.categories.clear();
    requirement.referee_experiences.reset();
    requirement.observer_experiences.reset();
  }
  entries_[index(requirement.league, requirement.role)] = std::move(requirement);
}

namespace {

using enum Experience;

std::set<int> up_to(int worst) {
  std::set<int> out;
  for (int c = Category::kBest; c <= worst; ++c) out.insert(c);
  return out;
}

RoleRequirement on_field(League l, Role r, int worst_category,
                         std::optional<std::set<Experience>> ref_exp = std::nullopt) {
  return {l, r, up_to(worst_category), std::move(ref_exp), std::nullopt,
          Presence::kRequired};
}

RoleRequirement observer(League l, std::set<Experience> exp, Presence p) {
  return {l, Role::kObserver, {}, std::nullopt, std::move(exp), p};
}

RequirementTable build_canonical() {
  RequirementTable t;
  const auto ars = [&t](League l, int worst) {
    t.set(on_field(l, Role::kAssistantReferee1, worst));
    t.set(on_field(l, Role::kAssistantReferee2, worst));
  };

  t.set(on_field(League::kSPL, Role::kReferee, 1, std::set{kHigh}));
  ars(League::kSPL, 3);
  t.set(on_field(League::kSPL, Role::kFourthOfficial, 1, std::set{kHigh}));
  t.set(observer(League::kSPL, {kHigh}, Presence::kRequired));

  for (League l : {League::kSFL1, League::kSFL2}) {
    t.set(on_field(l, Role::kReferee, 1, std::set{kHigh, kMedium}));
    ars(l, 3);
    t.set(observer(l, {kHigh, kMedium}, Presence::kBestEffort));
  }

  t.set(on_field(League::kSFL3, Role::kReferee, 1, std::set{kHigh, kMedium, kLow}));
  ars(League::kSFL3, 3);
  t.set(observer(League::kSFL3, {kHigh, kMedium}, Presence::kBestEffort));

  t.set(on_field(League::kJunior, Role::kReferee, 4));
  ars(League::kJunior, 6);
  t.set(observer(League::kJunior, {kHigh, kMedium, kLow}, Presence::kBestEffort));

  for (League l : {League::kAmateur, League::kYouth}) {
    t.set(on_field(l, Role::kReferee, 6));
    t.set(observer(l, {kHigh, kMedium, kLow}, Presence::kBestEffort));
  }
  return t;
}

}  // namespace

const RequirementTable& RequirementTable::canonical() {
  static const RequirementTable table = build_canonical();
  return table;
}

const RoleRequirement& requirement_for(League league, Role role) {
  return RequirementTable::canonical().at(league, role);
}

bool is_eligible(const Official& official, const RoleRequirement& req) {
  if (!req.used()) return false;
  if (req.role == Role::kObserver) {
    if (!official.observer_experience) return false;
    return !req.observer_experiences ||
           req.observer_experiences->contains(*official.observer_experience);
  }
  if (!official.category || !req.categories.contains(official.category->value())) {
    return false;
  }
  if (req.referee_experiences) {
    return official.referee_experience &&
           req.referee_experiences->contains(*official.referee_experience);
  }
  return true;
}

bool is_eligible(const Official& official, League league, Role role) {
  return is_eligible(official, requirement_for(league, role));
}

namespace {

std::string describe(const Assignment& a) { return to_string(a); }

}  // namespace

std::vector<Violation> validate(const std::set<Assignment>& assignments,
                                const Snapshot& ctx, const ValidateOptions& opt) {
  const RequirementTable& table = opt.table ? *opt.table : RequirementTable::canonical();
  std::vector<Violation> out;

  std::vector<std::pair<const Assignment*, const Fixture*>> resolved;
  std::map<std::pair<FixtureId, Role>, std::vector<const Assignment*>> by_slot;
  std::map<std::pair<FixtureId, OfficialId>, std::vector<const Assignment*>> by_pair;

  for (const Assignment& a : assignments) {
    const Fixture* fx = ctx.find_fixture(a.fixture);
    const Official* off = ctx.find_official(a.official);
    if (!fx || !off) {
      out.push_back({ViolationKind::kUnknownReference, a.fixture, a.role, a.official,
                     std::nullopt,
                     describe(a) + ": unknown " + (fx ? "official" : "fixture")});
      continue;
    }
    by_slot[{a.fixture, a.role}].push_back(&a);
    by_pair[{a.fixture, a.official}].push_back(&a);
    resolved.emplace_back(&a, fx);

    const RoleRequirement& req = table.at(fx->league, a.role);
    if (!is_eligible(*off, req)) {
      bool category_problem = true;
      if (req.used()) {
        if (a.role == Role::kObserver) {
          category_problem = false;
        } else if (off->category && req.categories.contains(off->category->value())) {
          category_problem = false;  // grade fine, experience is not
        }
      }
      std::string why;
      if (!req.used()) {
        why = std::string(to_string(a.role)) + " is not used in " +
              std::string(display_name(fx->league));
      } else if (category_problem) {
        why = off->category ? "category " + std::to_string(off->category->value()) +
                                  " not allowed"
                            : "official has no referee category";
      } else {
        why = "experience not allowed";
      }
      out.push_back({category_problem ? ViolationKind::kIneligibleCategory
                                      : ViolationKind::kIneligibleExperience,
                     a.fixture, a.role, a.official, std::nullopt, describe(a) + ": " + why});
    }

    if (opt.check_availability && !ctx.is_available(a.official, fx->date)) {
      out.push_back({ViolationKind::kNotAvailable, a.fixture, a.role, a.official,
                     std::nullopt,
                     describe(a) + ": no availability declared for " +
                         format_iso_date(fx->date)});
    }
  }

  for (const auto& [slot, list] : by_slot) {
    for (std::size_t i = 1; i < list.size(); ++i) {
      out.push_back({ViolationKind::kDuplicateRole, slot.first, slot.second,
                     list[i]->official, std::nullopt,
                     slot.first.str() + ": " + std::string(to_string(slot.second)) +
                         " filled more than once"});
    }
  }
  for (const auto& [key, list] : by_pair) {
    for (std::size_t i = 1; i < list.size(); ++i) {
      out.push_back({ViolationKind::kDuplicateRole, key.first, list[i]->role, key.second,
                     std::nullopt,
                     key.first.str() + ": " + key.second.str() + " holds more than one role"});
    }
  }

  // Same official, different fixtures, same date. One violation per
  // unordered pair of assignments so the report does not depend on order.
  std::map<std::pair<OfficialId, Date>, std::vector<std::pair<const Assignment*, const Fixture*>>>
      by_day;
  for (const auto& [a, fx] : resolved) by_day[{a->official, fx->date}].emplace_back(a, fx);
  for (const auto& [key, list] : by_day) {
    for (std::size_t i = 0; i < list.size(); ++i) {
      for (std::size_t j = i + 1; j < list.size(); ++j) {
        const Assignment* a = list[i].first;
        const Assignment* b = list[j].first;
        if (a->fixture == b->fixture) continue;  // reported as DuplicateRole
        const Assignment* lo = a->fixture < b->fixture ? a : b;
        const Assignment* hi = lo == a ? b : a;
        out.push_back({ViolationKind::kDoubleBooking, lo->fixture, lo->role, key.first,
                       hi->fixture,
                       key.first.str() + " works " + lo->fixture.str() + " and " +
                           hi->fixture.str() + " on " + format_iso_date(key.second)});
      }
    }
  }

  if (opt.check_required_roles) {
    for (const auto& [id, fx] : ctx.fixtures) {
      if (opt.scope && !opt.scope->contains(id)) continue;
      for (Role r : kAllRoles) {
        if (table.at(fx.league, r).presence != Presence::kRequired) continue;
        if (by_slot.contains({id, r})) continue;
        out.push_back({ViolationKind::kMissingRequiredRole, id, r, std::nullopt, std::nullopt,
                       id.str() + ": no " + std::string(to_string(r))});
      }
    }
  }

  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace refalloc
