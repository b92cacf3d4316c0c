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

#include "refalloc/data_file.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "text.hpp"

namespace refalloc {

namespace csv {

std::vector<std::string> split_record(std::string_view line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          fields.back().push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        fields.back().push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back().push_back(c);
    }
  }
  if (quoted) throw Error(ErrorCode::kParseError, "unterminated quoted field");
  return fields;
}

std::string join_record(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out.push_back(',');
    const std::string& f = fields[i];
    if (f.find_first_of(",\"\n\r") == std::string::npos) {
      out += f;
      continue;
    }
    out.push_back('"');
    for (char c : f) {
      if (c == '"') out.push_back('"');
      out.push_back(c);
    }
    out.push_back('"');
  }
  return out;
}

}  // namespace csv

namespace {

enum class Section { kNone, kOfficials, kFixtures, kAssignments, kAvailability };

[[noreturn]] void parse_fail(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::kParseError, "line " + std::to_string(line) + ": " + what);
}

[[noreturn]] void integrity_fail(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::kIntegrityError, "line " + std::to_string(line) + ": " + what);
}

template <typename Id>
Id parse_id(std::string_view raw, std::size_t line, const char* what) {
  try {
    return Id::parse(raw);
  } catch (const Error& e) {
    parse_fail(line, std::string(what) + ": " + e.what());
  }
}

Date parse_date_field(std::string_view raw, std::size_t line) {
  auto d = parse_iso_date(raw);
  if (!d) parse_fail(line, "bad date '" + std::string(raw) + "' (expected YYYY-MM-DD)");
  return *d;
}

std::optional<Experience> parse_optional_experience(std::string_view raw, std::size_t line,
                                                    const char* column) {
  if (text::trim(raw).empty()) return std::nullopt;
  auto e = parse_experience(raw);
  if (!e) parse_fail(line, std::string("bad ") + column + " '" + std::string(raw) + "'");
  return e;
}

}  // namespace

Snapshot parse_data(std::string_view input) {
  Snapshot snap;
  std::map<OfficialId, std::size_t> official_line;
  std::map<std::string, std::size_t> username_line;
  std::set<Section> seen;
  Section section = Section::kNone;
  bool expect_header = false;

  struct PendingAssignment { Assignment a; std::size_t line; };
  struct PendingAvailability { AvailabilityRecord r; std::size_t line; };
  std::vector<PendingAssignment> assignments;
  std::vector<PendingAvailability> availability;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= input.size()) {
    std::size_t end = input.find('\n', pos);
    if (end == std::string_view::npos) end = input.size();
    std::string_view line = input.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.remove_prefix(3);

    const std::string_view trimmed = text::trim(line);
    if (trimmed.empty() || trimmed.front() == '#') {
      continue;
    }

    if (trimmed.front() == '[') {
      if (expect_header) parse_fail(line_no, "section has no header row");
      static const std::map<std::string, Section> names = {
          {"[officials]", Section::kOfficials},
          {"[fixtures]", Section::kFixtures},
          {"[assignments]", Section::kAssignments},
          {"[availability]", Section::kAvailability}};
      auto it = names.find(text::lower(trimmed));
      if (it == names.end()) parse_fail(line_no, "unknown section " + std::string(trimmed));
      if (!seen.insert(it->second).second) {
        parse_fail(line_no, "section " + std::string(trimmed) + " appears twice");
      }
      section = it->second;
      expect_header = true;
      continue;
    }

    if (section == Section::kNone) parse_fail(line_no, "record outside of any section");

    if (expect_header) {
      std::string_view want;
      switch (section) {
        case Section::kOfficials: want = kOfficialsHeader; break;
        case Section::kFixtures: want = kFixturesHeader; break;
        case Section::kAssignments: want = kAssignmentsHeader; break;
        case Section::kAvailability: want = kAvailabilityHeader; break;
        case Section::kNone: break;
      }
      if (line != want) {
        parse_fail(line_no, "expected header '" + std::string(want) + "'");
      }
      expect_header = false;
      continue;
    }

    std::vector<std::string> f;
    try {
      f = csv::split_record(line);
    } catch (const Error& e) {
      parse_fail(line_no, e.what());
    }

    auto need = [&](std::size_t n) {
      if (f.size() != n) {
        parse_fail(line_no, "expected " + std::to_string(n) + " fields, got " +
                                std::to_string(f.size()));
      }
    };

    switch (section) {
      case Section::kOfficials: {
        need(7);
        Official o;
        o.id = parse_id<OfficialId>(f[0], line_no, "official id");
        o.name = std::string(text::trim(f[1]));
        if (!text::trim(f[2]).empty()) {
          int value = 0;
          const std::string_view c = text::trim(f[2]);
          auto [ptr, ec] = std::from_chars(c.data(), c.data() + c.size(), value);
          if (ec != std::errc{} || ptr != c.data() + c.size() || value < Category::kBest ||
              value > Category::kWorst) {
            parse_fail(line_no, "bad category '" + f[2] + "'");
          }
          o.category = Category(value);
        }
        o.referee_experience = parse_optional_experience(f[3], line_no, "refereeExperience");
        o.observer_experience = parse_optional_experience(f[4], line_no, "observerExperience");
        o.username = std::string(text::trim(f[5]));
        o.password_digest = f[6];
        try {
          o.check();
        } catch (const Error& e) {
          integrity_fail(line_no, e.what());
        }
        if (official_line.contains(o.id)) {
          integrity_fail(line_no, "duplicate official id " + o.id.str() + " (first on line " +
                                      std::to_string(official_line[o.id]) + ")");
        }
        const std::string user_key = text::lower(o.username);
        if (username_line.contains(user_key)) {
          integrity_fail(line_no, "duplicate username '" + o.username + "' (first on line " +
                                      std::to_string(username_line[user_key]) + ")");
        }
        official_line[o.id] = line_no;
        username_line[user_key] = line_no;
        snap.officials.emplace(o.id, std::move(o));
        break;
      }
      case Section::kFixtures: {
        need(7);
        Fixture fx;
        auto league = parse_league(f[0]);
        if (!league) parse_fail(line_no, "unknown league '" + f[0] + "'");
        fx.league = *league;
        fx.location = std::string(text::trim(f[1]));
        fx.date = parse_date_field(f[2], line_no);
        auto t = TimeOfDay::parse(f[3]);
        if (!t) parse_fail(line_no, "bad time '" + f[3] + "' (expected HH:MM)");
        fx.time = *t;
        fx.home_team = std::string(text::trim(f[4]));
        fx.away_team = std::string(text::trim(f[5]));
        fx.id = parse_id<FixtureId>(f[6], line_no, "fixture id");
        try {
          fx.check();
        } catch (const Error& e) {
          integrity_fail(line_no, e.what());
        }
        if (!snap.fixtures.emplace(fx.id, fx).second) {
          integrity_fail(line_no, "duplicate fixture id " + fx.id.str());
        }
        break;
      }
      case Section::kAssignments: {
        need(3);
        Assignment a;
        a.fixture = parse_id<FixtureId>(f[0], line_no, "fixture id");
        a.official = parse_id<OfficialId>(f[1], line_no, "official id");
        auto role = parse_role(f[2]);
        if (!role) parse_fail(line_no, "unknown role '" + f[2] + "'");
        a.role = *role;
        assignments.push_back({a, line_no});
        break;
      }
      case Section::kAvailability: {
        need(2);
        AvailabilityRecord r{parse_id<OfficialId>(f[0], line_no, "official id"),
                             parse_date_field(f[1], line_no)};
        availability.push_back({r, line_no});
        break;
      }
      case Section::kNone:
        break;
    }
  }
  if (expect_header) parse_fail(line_no, "section has no header row");

  // References are resolved after every section is read, so section order
  // does not matter.
  std::map<std::pair<FixtureId, Role>, std::size_t> slot_line;
  std::map<std::pair<FixtureId, OfficialId>, std::size_t> pair_line;
  for (const auto& [a, line] : assignments) {
    if (!snap.fixtures.contains(a.fixture)) {
      integrity_fail(line, "assignment references unknown fixture " + a.fixture.str());
    }
    if (!snap.officials.contains(a.official)) {
      integrity_fail(line, "assignment references unknown official " + a.official.str());
    }
    if (auto [it, fresh] = slot_line.emplace(std::pair{a.fixture, a.role}, line); !fresh) {
      integrity_fail(line, a.fixture.str() + " " + std::string(to_string(a.role)) +
                               " already assigned on line " + std::to_string(it->second));
    }
    if (auto [it, fresh] = pair_line.emplace(std::pair{a.fixture, a.official}, line); !fresh) {
      integrity_fail(line, a.official.str() + " already holds a role at " + a.fixture.str() +
                               " (line " + std::to_string(it->second) + ")");
    }
    snap.assignments.insert(a);
  }
  for (const auto& [r, line] : availability) {
    if (!snap.officials.contains(r.official)) {
      integrity_fail(line, "availability references unknown official " + r.official.str());
    }
    snap.availability.insert(r);
  }
  return snap;
}

std::string format_data(const Snapshot& snap) {
  std::ostringstream out;
  out << "[officials]\n" << kOfficialsHeader << '\n';
  for (const auto& [id, o] : snap.officials) {
    out << csv::join_record({
               id.str(),
               o.name,
               o.category ? std::to_string(o.category->value()) : std::string(),
               o.referee_experience ? std::string(to_string(*o.referee_experience)) : "",
               o.observer_experience ? std::string(to_string(*o.observer_experience)) : "",
               o.username,
               o.password_digest,
           })
        << '\n';
  }
  out << "[fixtures]\n" << kFixturesHeader << '\n';
  for (const auto& [id, fx] : snap.fixtures) {
    out << csv::join_record({
               std::string(to_string(fx.league)),
               fx.location,
               format_iso_date(fx.date),
               fx.time.seconds_since_midnight() % 60 ? fx.time.hh_mm_ss() : fx.time.hh_mm(),
               fx.home_team,
               fx.away_team,
               id.str(),
           })
        << '\n';
  }
  out << "[assignments]\n" << kAssignmentsHeader << '\n';
  for (const Assignment& a : snap.assignments) {
    out << csv::join_record({a.fixture.str(), a.official.str(), std::string(to_string(a.role))})
        << '\n';
  }
  out << "[availability]\n" << kAvailabilityHeader << '\n';
  for (const AvailabilityRecord& r : snap.availability) {
    out << r.official.str() << ',' << format_iso_date(r.date) << '\n';
  }
  return out.str();
}

Snapshot read_data_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_data(buf.str());
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

void write_data_file(const Snapshot& snapshot, const std::filesystem::path& path) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIoError, "cannot write " + tmp.string());
    out << format_data(snapshot);
    out.flush();
    if (!out) throw Error(ErrorCode::kIoError, "write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorCode::kIoError, "cannot replace " + path.string());
  }
}

}  // namespace refalloc
