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

#include "refalloc/domain.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>

#include "text.hpp"

namespace refalloc {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kMalformedId: return "MalformedId";
    case ErrorCode::kDuplicateId: return "DuplicateId";
    case ErrorCode::kDuplicateUsername: return "DuplicateUsername";
    case ErrorCode::kUnknownId: return "UnknownId";
    case ErrorCode::kHasAssignments: return "HasAssignments";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kIntegrityError: return "IntegrityError";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kInvalidPreAssignment: return "InvalidPreAssignment";
    case ErrorCode::kSearchBudgetExceeded: return "SearchBudgetExceeded";
    case ErrorCode::kNotAssigned: return "NotAssigned";
    case ErrorCode::kIneligibleReplacement: return "IneligibleReplacement";
    case ErrorCode::kDoubleBookedReplacement: return "DoubleBookedReplacement";
    case ErrorCode::kUnavailableReplacement: return "UnavailableReplacement";
    case ErrorCode::kUnknownReference: return "UnknownReference";
    case ErrorCode::kDateMismatch: return "DateMismatch";
  }
  return "Unknown";
}

Category::Category(int value) : value_(value) {
  if (value < kBest || value > kWorst) {
    throw Error(ErrorCode::kInvalidArgument,
                "category must be between 1 and 10, got " +
                    std::to_string(value));
  }
}

std::string_view to_string(Experience e) {
  switch (e) {
    case Experience::kHigh: return "High";
    case Experience::kMedium: return "Medium";
    case Experience::kLow: return "Low";
  }
  return "";
}

std::string_view to_string(League l) {
  switch (l) {
    case League::kSPL: return "SPL";
    case League::kSFL1: return "SFL1";
    case League::kSFL2: return "SFL2";
    case League::kSFL3: return "SFL3";
    case League::kJunior: return "Junior";
    case League::kAmateur: return "Amateur";
    case League::kYouth: return "Youth";
  }
  return "";
}

std::string_view display_name(League l) {
  switch (l) {
    case League::kSFL1: return "SFL 1";
    case League::kSFL2: return "SFL 2";
    case League::kSFL3: return "SFL 3";
    default: return to_string(l);
  }
}

std::string_view to_string(Role r) {
  switch (r) {
    case Role::kReferee: return "Referee";
    case Role::kAssistantReferee1: return "Assistant Referee 1";
    case Role::kAssistantReferee2: return "Assistant Referee 2";
    case Role::kFourthOfficial: return "Fourth Official";
    case Role::kObserver: return "Observer";
  }
  return "";
}

std::optional<Experience> parse_experience(std::string_view s) {
  const std::string key = text::lower(text::trim(s));
  if (key == "high") return Experience::kHigh;
  if (key == "medium") return Experience::kMedium;
  if (key == "low") return Experience::kLow;
  return std::nullopt;
}

std::optional<League> parse_league(std::string_view s) {
  // Spaces are insignificant: "SFL 1" == "SFL1".
  std::string key;
  for (char c : text::trim(s)) {
    if (c != ' ') key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  for (League l : kAllLeagues) {
    if (key == text::lower(to_string(l))) return l;
  }
  if (key == "premier") return League::kSPL;
  // Youth age bands U11..U21 collapse into one tier.
  if (key.size() > 5 && key.starts_with("youthu")) {
    int age = 0;
    const char* first = key.data() + 6;
    const char* last = key.data() + key.size();
    auto [ptr, ec] = std::from_chars(first, last, age);
    if (ec == std::errc{} && ptr == last && age >= 11 && age <= 21) {
      return League::kYouth;
    }
  }
  return std::nullopt;
}

std::optional<Role> parse_role(std::string_view s) {
  std::string key;
  for (char c : text::trim(s)) {
    if (c != ' ' && c != '_' && c != '-') {
      key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
  }
  if (key == "referee") return Role::kReferee;
  if (key == "assistantreferee1" || key == "ar1") return Role::kAssistantReferee1;
  if (key == "assistantreferee2" || key == "ar2") return Role::kAssistantReferee2;
  if (key == "fourthofficial" || key == "4thofficial") return Role::kFourthOfficial;
  if (key == "observer") return Role::kObserver;
  return std::nullopt;
}

namespace {

// `min_letters`..`max_letters` ASCII letters followed by at least one digit.
bool letters_then_digits(std::string_view s, std::size_t min_letters,
                         std::size_t max_letters) {
  std::size_t i = 0;
  while (i < s.size() && std::isalpha(static_cast<unsigned char>(s[i]))) ++i;
  if (i < min_letters || i > max_letters || i == s.size()) return false;
  return std::all_of(s.begin() + static_cast<std::ptrdiff_t>(i), s.end(),
                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

}  // namespace

bool OfficialId::is_well_formed(std::string_view raw) {
  return letters_then_digits(text::trim(raw), 1, 1);
}

OfficialId OfficialId::parse(std::string_view raw) {
  const std::string_view s = text::trim(raw);
  if (!is_well_formed(s)) {
    throw Error(ErrorCode::kMalformedId,
                "malformed official id '" + std::string(raw) + "'");
  }
  return OfficialId(text::upper(s));
}

bool FixtureId::is_well_formed(std::string_view raw) {
  return letters_then_digits(text::trim(raw), 1, 8);
}

FixtureId FixtureId::parse(std::string_view raw) {
  const std::string_view s = text::trim(raw);
  if (!is_well_formed(s)) {
    throw Error(ErrorCode::kMalformedId,
                "malformed fixture id '" + std::string(raw) + "'");
  }
  return FixtureId(text::upper(s));
}

std::optional<Date> parse_iso_date(std::string_view s) {
  s = text::trim(s);
  if (s.size() != 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
  int y = 0, m = 0, d = 0;
  auto num = [&](std::size_t pos, std::size_t len, int& out) {
    auto [ptr, ec] = std::from_chars(s.data() + pos, s.data() + pos + len, out);
    return ec == std::errc{} && ptr == s.data() + pos + len;
  };
  if (!num(0, 4, y) || !num(5, 2, m) || !num(8, 2, d)) return std::nullopt;
  const Date date{std::chrono::year{y}, std::chrono::month{static_cast<unsigned>(m)},
                  std::chrono::day{static_cast<unsigned>(d)}};
  if (!date.ok()) return std::nullopt;
  return date;
}

std::string format_iso_date(Date d) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(d.year()),
                static_cast<unsigned>(d.month()), static_cast<unsigned>(d.day()));
  return buf;
}

std::optional<Date> make_date(int day, int month, int year) {
  if (year >= 0 && year < 100) year += 2000;
  if (day < 1 || month < 1 || year < 1 || year > 9999) return std::nullopt;
  const Date date{std::chrono::year{year}, std::chrono::month{static_cast<unsigned>(month)},
                  std::chrono::day{static_cast<unsigned>(day)}};
  if (!date.ok()) return std::nullopt;
  return date;
}

TimeOfDay::TimeOfDay(int hours, int minutes, int seconds) {
  if (hours < 0 || hours > 23 || minutes < 0 || minutes > 59 || seconds < 0 ||
      seconds > 59) {
    throw Error(ErrorCode::kInvalidArgument, "time of day out of range");
  }
  seconds_ = hours * 3600 + minutes * 60 + seconds;
}

std::optional<TimeOfDay> TimeOfDay::parse(std::string_view s) {
  s = text::trim(s);
  if (s.size() != 5 && s.size() != 8) return std::nullopt;
  if (s[2] != ':' || (s.size() == 8 && s[5] != ':')) return std::nullopt;
  int parts[3] = {0, 0, 0};
  for (std::size_t i = 0; i * 3 < s.size(); ++i) {
    const char* first = s.data() + i * 3;
    auto [ptr, ec] = std::from_chars(first, first + 2, parts[i]);
    if (ec != std::errc{} || ptr != first + 2) return std::nullopt;
  }
  if (parts[0] > 23 || parts[1] > 59 || parts[2] > 59) return std::nullopt;
  return TimeOfDay(parts[0], parts[1], parts[2]);
}

std::string TimeOfDay::hh_mm() const {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%02d:%02d", seconds_ / 3600, seconds_ / 60 % 60);
  return buf;
}

std::string TimeOfDay::hh_mm_ss() const {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%02d:%02d:%02d", seconds_ / 3600,
                seconds_ / 60 % 60, seconds_ % 60);
  return buf;
}

void Official::check() const {
  const std::string who = id.empty() ? std::string("official") : id.str();
  if (id.empty()) throw Error(ErrorCode::kInvalidArgument, "official id is empty");
  if (text::trim(name).empty()) {
    throw Error(ErrorCode::kInvalidArgument, who + ": name is empty");
  }
  if (!category && !observer_experience) {
    throw Error(ErrorCode::kInvalidArgument,
                who + ": needs a referee category, an observer experience, or both");
  }
  if (category && !referee_experience) {
    throw Error(ErrorCode::kInvalidArgument,
                who + ": a referee category requires a referee experience");
  }
  if (!category && referee_experience) {
    throw Error(ErrorCode::kInvalidArgument,
                who + ": referee experience given without a category");
  }
  if (text::trim(username).empty()) {
    throw Error(ErrorCode::kInvalidArgument, who + ": username is empty");
  }
}

void Fixture::check() const {
  if (id.empty()) throw Error(ErrorCode::kInvalidArgument, "fixture id is empty");
  if (text::trim(home_team).empty() || text::trim(away_team).empty()) {
    throw Error(ErrorCode::kInvalidArgument, id.str() + ": both teams are required");
  }
  if (text::lower(text::trim(home_team)) == text::lower(text::trim(away_team))) {
    throw Error(ErrorCode::kInvalidArgument,
                id.str() + ": home and away team are the same");
  }
  if (!date.ok()) throw Error(ErrorCode::kInvalidArgument, id.str() + ": invalid date");
}

std::string to_string(const Assignment& a) {
  return a.fixture.str() + "/" + std::string(to_string(a.role)) + "=" + a.official.str();
}

}  // namespace refalloc
