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

// Core vocabulary: officials, fixtures, assignments and the small value types
// they are built from. Nothing here knows about eligibility rules.

#ifndef REFALLOC_DOMAIN_HPP_
#define REFALLOC_DOMAIN_HPP_

#include <array>
#include <chrono>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "refalloc/error.hpp"

namespace refalloc {

// Referee grade. 1 is the highest qualification, 10 the most junior.
class Category {
 public:
  static constexpr int kBest = 1;
  static constexpr int kWorst = 10;

  explicit Category(int value);

  constexpr int value() const noexcept { return value_; }
  auto operator<=>(const Category&) const = default;

 private:
  int value_;
};

// True when `a` is at least as qualified as `b` (a.value <= b.value).
inline bool outranks_or_equals(Category a, Category b) noexcept {
  return a.value() <= b.value();
}

// Declared in rank order so that the built-in comparison gives
// Low < Medium < High.
enum class Experience : std::uint8_t { kLow, kMedium, kHigh };

enum class League : std::uint8_t {
  kSPL,
  kSFL1,
  kSFL2,
  kSFL3,
  kJunior,
  kAmateur,
  kYouth,
};

inline constexpr std::array<League, 7> kAllLeagues = {
    League::kSPL,    League::kSFL1,    League::kSFL2,  League::kSFL3,
    League::kJunior, League::kAmateur, League::kYouth,
};

// Stage order used by the allocator: referees first, observers last.
enum class Role : std::uint8_t {
  kReferee,
  kAssistantReferee1,
  kAssistantReferee2,
  kFourthOfficial,
  kObserver,
};

inline constexpr std::array<Role, 5> kAllRoles = {
    Role::kReferee, Role::kAssistantReferee1, Role::kAssistantReferee2,
    Role::kFourthOfficial, Role::kObserver,
};

// Canonical tokens (file/wire) and display names.
std::string_view to_string(Experience e);
std::string_view to_string(League l);       // "SPL", "SFL1", ... "Youth"
std::string_view display_name(League l);    // "SPL", "SFL 1", ... "Youth"
std::string_view to_string(Role r);         // "Referee", "Assistant Referee 1", ...

// Case-insensitive. Leagues also accept "SFL 1" and youth age bands
// ("Youth U19"). Roles accept both "Assistant Referee 1" and
// "AssistantReferee1". Return nullopt on anything else.
std::optional<Experience> parse_experience(std::string_view s);
std::optional<League> parse_league(std::string_view s);
std::optional<Role> parse_role(std::string_view s);

// One letter followed by digits, e.g. R001 or E001. Input is
// case-insensitive; the stored form is uppercase.
class OfficialId {
 public:
  OfficialId() = default;
  static OfficialId parse(std::string_view raw);
  static bool is_well_formed(std::string_view raw);

  const std::string& str() const noexcept { return value_; }
  bool empty() const noexcept { return value_.empty(); }
  auto operator<=>(const OfficialId&) const = default;

 private:
  explicit OfficialId(std::string value) : value_(std::move(value)) {}
  std::string value_;
};

// Letters followed by digits, e.g. SPL001, SLF001, J002.
class FixtureId {
 public:
  FixtureId() = default;
  static FixtureId parse(std::string_view raw);
  static bool is_well_formed(std::string_view raw);

  const std::string& str() const noexcept { return value_; }
  bool empty() const noexcept { return value_.empty(); }
  auto operator<=>(const FixtureId&) const = default;

 private:
  explicit FixtureId(std::string value) : value_(std::move(value)) {}
  std::string value_;
};

using Date = std::chrono::year_month_day;

// ISO 8601 (YYYY-MM-DD) only.
std::optional<Date> parse_iso_date(std::string_view s);
std::string format_iso_date(Date d);
// Day/month/year as typed at a prompt. Years below 100 are read as 2000+yy.
std::optional<Date> make_date(int day, int month, int year);

class TimeOfDay {
 public:
  TimeOfDay() = default;
  TimeOfDay(int hours, int minutes, int seconds = 0);

  // "HH:MM" or "HH:MM:SS".
  static std::optional<TimeOfDay> parse(std::string_view s);
  std::string hh_mm() const;
  std::string hh_mm_ss() const;
  int seconds_since_midnight() const noexcept { return seconds_; }
  auto operator<=>(const TimeOfDay&) const = default;

 private:
  int seconds_ = 0;
};

struct Official {
  OfficialId id;
  std::string name;
  std::optional<Category> category;
  std::optional<Experience> referee_experience;
  std::optional<Experience> observer_experience;
  std::string username;
  std::string password_digest;  // empty: cannot sign in

  bool referee_qualified() const noexcept { return category.has_value(); }
  bool observer_qualified() const noexcept {
    return observer_experience.has_value();
  }

  // Throws kInvalidArgument when the per-record invariants do not hold.
  void check() const;

  bool operator==(const Official&) const = default;
};

struct Fixture {
  FixtureId id;
  League league = League::kSPL;
  std::string home_team;
  std::string away_team;
  std::string location;
  Date date;
  TimeOfDay time;

  void check() const;

  bool operator==(const Fixture&) const = default;
};

struct Assignment {
  FixtureId fixture;
  OfficialId official;
  Role role = Role::kReferee;

  auto operator<=>(const Assignment&) const = default;
};

struct AvailabilityRecord {
  OfficialId official;
  Date date;

  auto operator<=>(const AvailabilityRecord&) const = default;
};

std::string to_string(const Assignment& a);

}  // namespace refalloc

#endif  // REFALLOC_DOMAIN_HPP_
