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

#include "menu.hpp"

#include <cctype>
#include <charconv>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "handles.hpp"

namespace refalloc::tools {

namespace {

struct EndOfInput {};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::optional<int> to_int(const std::string& s) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

const char* const kMainMenu =
    "1 Update officials and fixtures\n"
    "2 Assign officials\n"
    "3 View appointments\n"
    "4 Change assignment\n"
    "5 Exit\n";

const char* const kUpdateMenu =
    "1 Add official\n"
    "2 Remove official\n"
    "3 Add fixture\n"
    "4 Remove fixture\n"
    "5 Return to main menu\n";

const char* const kAssignMenu =
    "1 Automatic assign ALL officials\n"
    "2 Automatic assign SPL officials\n"
    "3 Automatic assign SFL 1 officials\n"
    "4 Automatic assign SFL 2 officials\n"
    "5 Automatic assign SFL 3 officials\n"
    "6 Automatic assign Junior officials\n"
    "7 Pre assign SPL officials\n"
    "8 Pre assign SFL 1,2 or 3 officials\n"
    "9 Pre assign Junior officials\n"
    "10 Return to main menu\n";

const char* const kViewMenu =
    "1 View ALL appointments\n"
    "2 View SPL appointments\n"
    "3 View SFL 1 appointments\n"
    "4 View SFL 2 appointments\n"
    "5 View SFL 3 appointments\n"
    "6 View Junior appointments\n"
    "7 Return to main menu\n";

// League filters for assign options 1-6 and view options 1-6.
const unsigned kOptionLeagues[] = {
    REFALLOC_ALL_LEAGUES,
    REFALLOC_LEAGUE_BIT(REFALLOC_LEAGUE_SPL),
    REFALLOC_LEAGUE_BIT(REFALLOC_LEAGUE_SFL1),
    REFALLOC_LEAGUE_BIT(REFALLOC_LEAGUE_SFL2),
    REFALLOC_LEAGUE_BIT(REFALLOC_LEAGUE_SFL3),
    REFALLOC_LEAGUE_BIT(REFALLOC_LEAGUE_JUNIOR),
};

struct PreAssignPrompt {
  refalloc_role role;
  const char* prompt;
};

class Menu {
 public:
  Menu(refalloc_store* store, std::istream& in, std::ostream& out, const MenuOptions& options)
      : store_(store), in_(in), out_(out), options_(options) {}

  int run() {
    try {
      main_menu();
    } catch (const EndOfInput&) {
      out_ << "\n";
    }
    return save() ? 0 : 1;
  }

 private:
  std::string ask(const std::string& prompt) {
    out_ << prompt << std::flush;
    std::string line;
    if (!std::getline(in_, line)) throw EndOfInput{};
    return trim(line);
  }

  int choose(const char* menu, int max) {
    for (;;) {
      out_ << menu << "\n";
      const auto choice = to_int(ask("Please enter your option :"));
      if (choice && *choice >= 1 && *choice <= max) return *choice;
      out_ << "Invalid option.\n";
    }
  }

  std::string ask_date() {
    for (;;) {
      const auto day = to_int(ask("Please insert the day :"));
      const auto month = day ? to_int(ask("Please insert the month :")) : std::nullopt;
      const auto year = month ? to_int(ask("Please insert the year :")) : std::nullopt;
      char iso[16];
      if (year && refalloc_make_date(*day, *month, *year, iso, sizeof iso) == REFALLOC_OK) {
        return iso;
      }
      out_ << "Invalid date, please try again.\n";
    }
  }

  // An id, or a name looked up among the officials. Blank answers return
  // nullopt when allowed.
  std::optional<std::string> ask_official(const std::string& prompt, bool allow_blank) {
    for (;;) {
      const std::string answer = ask(prompt);
      if (answer.empty()) {
        if (allow_blank) return std::nullopt;
        continue;
      }
      if (refalloc_is_official_id(answer.c_str())) return answer;
      refalloc_officials* raw = nullptr;
      if (refalloc_find_officials(store_, answer.c_str(), &raw) != REFALLOC_OK) {
        report_error();
        continue;
      }
      OfficialsPtr found(raw);
      const size_t n = refalloc_officials_count(found.get());
      if (n == 1) return refalloc_officials_id(found.get(), 0);
      if (n == 0) {
        out_ << "No official is registered as '" << answer << "'.\n";
        continue;
      }
      out_ << "Several officials share that name:\n";
      for (size_t i = 0; i < n; ++i) {
        out_ << "  " << refalloc_officials_id(found.get(), i) << " "
             << refalloc_officials_name(found.get(), i);
        if (int c = refalloc_officials_category(found.get(), i)) out_ << " (category " << c << ")";
        out_ << "\n";
      }
      out_ << "Please enter the id.\n";
    }
  }

  bool ask_yes(const std::string& prompt) {
    for (;;) {
      const std::string a = ask(prompt);
      if (a == "y" || a == "Y" || a == "yes") return true;
      if (a == "n" || a == "N" || a == "no") return false;
    }
  }

  void report_error() { out_ << "Error: " << refalloc_last_error() << "\n"; }

  bool save() {
    if (refalloc_store_save(store_) == REFALLOC_OK) return true;
    out_ << "Could not save the store: " << refalloc_last_error() << "\n";
    return false;
  }

  // Saves after a successful change and reports failures.
  void done(refalloc_status status, const char* success) {
    if (status != REFALLOC_OK) {
      report_error();
      return;
    }
    if (save()) out_ << success << "\n";
  }

  void main_menu() {
    for (;;) {
      switch (choose(kMainMenu, 5)) {
        case 1:
          update_menu();
          break;
        case 2:
          assign_menu();
          break;
        case 3:
          view_menu();
          break;
        case 4:
          change_assignment();
          break;
        case 5:
          return;
      }
    }
  }

  void update_menu() {
    for (;;) {
      switch (choose(kUpdateMenu, 5)) {
        case 1:
          add_official();
          break;
        case 2:
          remove_official();
          break;
        case 3:
          add_fixture();
          break;
        case 4:
          done(refalloc_remove_fixture(store_, ask("Insert fixture id :").c_str()),
               "Fixture removed.");
          break;
        case 5:
          return;
      }
    }
  }

  refalloc_experience ask_experience(const std::string& prompt, bool allow_blank) {
    for (;;) {
      std::string a = ask(prompt);
      for (char& c : a) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      if (a.empty() && allow_blank) return REFALLOC_EXPERIENCE_NONE;
      if (a == "high") return REFALLOC_EXPERIENCE_HIGH;
      if (a == "medium") return REFALLOC_EXPERIENCE_MEDIUM;
      if (a == "low") return REFALLOC_EXPERIENCE_LOW;
    }
  }

  void add_official() {
    const std::string id = ask("Insert official id :");
    const std::string name = ask("Insert official name :");
    int category = 0;
    for (;;) {
      const std::string a = ask("Insert category (blank if not a referee) :");
      if (a.empty()) break;
      if (auto c = to_int(a); c && *c >= 1 && *c <= 10) {
        category = *c;
        break;
      }
    }
    const refalloc_experience referee =
        category ? ask_experience("Insert referee experience (High, Medium, Low) :", false)
                 : REFALLOC_EXPERIENCE_NONE;
    const refalloc_experience observer =
        ask_experience("Insert observer experience (High, Medium, Low, blank for none) :", true);
    const std::string username = ask("Insert username :");
    const std::string password = ask("Insert password (blank for none) :");
    const refalloc_official_spec spec{id.c_str(), name.c_str(),     category,        referee,
                                      observer,   username.c_str(), password.c_str()};
    done(refalloc_add_official(store_, &spec), "Official added.");
  }

  void remove_official() {
    const auto id = ask_official("Insert official id :", false);
    refalloc_status s = refalloc_remove_official(store_, id->c_str(), 0);
    if (s == REFALLOC_ERR_HAS_ASSIGNMENTS) {
      out_ << refalloc_last_error() << "\n";
      if (!ask_yes("Remove the official together with those assignments? (y/n) :")) return;
      s = refalloc_remove_official(store_, id->c_str(), 1);
    }
    done(s, "Official removed.");
  }

  void add_fixture() {
    const std::string id = ask("Insert fixture id :");
    std::string league;
    for (;;) {
      league = ask("Insert league (SPL, SFL 1, SFL 2, SFL 3, Junior, Amateur, Youth) :");
      refalloc_league parsed;
      if (refalloc_parse_league(league.c_str(), &parsed) == REFALLOC_OK) break;
    }
    const std::string home = ask("Insert home team :");
    const std::string away = ask("Insert away team :");
    const std::string location = ask("Insert location :");
    const std::string date = ask_date();
    const std::string time = ask("Insert kick-off time (HH:MM) :");
    const refalloc_fixture_spec spec{id.c_str(),       league.c_str(), home.c_str(), away.c_str(),
                                     location.c_str(), date.c_str(),   time.c_str()};
    done(refalloc_add_fixture(store_, &spec), "Fixture added.");
  }

  refalloc_request request(const char* const* date, unsigned leagues) const {
    refalloc_request r;
    refalloc_request_init(&r);
    r.dates = date;
    r.n_dates = 1;
    r.leagues = leagues;
    if (options_.backtracking) r.algorithm = REFALLOC_ALGORITHM_BACKTRACKING;
    return r;
  }

  void assign_menu() {
    for (;;) {
      const int choice = choose(kAssignMenu, 10);
      if (choice == 10) return;
      if (choice <= 6) {
        automatic_assign(kOptionLeagues[choice - 1]);
      } else {
        pre_assign(choice);
      }
    }
  }

  void automatic_assign(unsigned leagues) {
    const std::string date = ask_date();
    const char* dates[] = {date.c_str()};
    const refalloc_request r = request(dates, leagues);
    refalloc_result* raw = nullptr;
    if (refalloc_assign(store_, &r, 1, &raw) != REFALLOC_OK) {
      report_error();
      return;
    }
    ResultPtr result(raw);
    save();
    print_result(result.get(), out_);
  }

  void pre_assign(int choice) {
    static const PreAssignPrompt kSpl[] = {
        {REFALLOC_ROLE_REFEREE, "Insert the id of the referee:"},
        {REFALLOC_ROLE_ASSISTANT_REFEREE_1, "Insert the id of the AR1:"},
        {REFALLOC_ROLE_ASSISTANT_REFEREE_2, "Insert the id of the AR2:"},
        {REFALLOC_ROLE_FOURTH_OFFICIAL, "Insert the id of the fourth official:"},
        {REFALLOC_ROLE_OBSERVER, "Insert the id of the observer:"},
    };
    const size_t n_prompts = choice == 7 ? 5 : 3;
    const unsigned leagues =
        choice == 7   ? REFALLOC_LEAGUE_BIT(REFALLOC_LEAGUE_SPL)
        : choice == 8 ? REFALLOC_LEAGUE_BIT(REFALLOC_LEAGUE_SFL1) |
                            REFALLOC_LEAGUE_BIT(REFALLOC_LEAGUE_SFL2) |
                            REFALLOC_LEAGUE_BIT(REFALLOC_LEAGUE_SFL3)
                      : REFALLOC_LEAGUE_BIT(REFALLOC_LEAGUE_JUNIOR);

    const std::string fixture = ask("Insert fixture id :");
    const std::string date = ask_date();
    std::vector<std::string> ids;
    std::vector<refalloc_role> roles;
    bool auto_fill = false;
    for (size_t i = 0; i < n_prompts; ++i) {
      if (auto id = ask_official(kSpl[i].prompt, true)) {
        ids.push_back(*id);
        roles.push_back(kSpl[i].role);
      } else {
        auto_fill = true;
      }
    }
    std::vector<refalloc_manual_slot> slots;
    for (size_t i = 0; i < ids.size(); ++i) {
      slots.push_back({fixture.c_str(), roles[i], ids[i].c_str()});
    }
    const char* dates[] = {date.c_str()};
    const refalloc_request r = request(dates, leagues);
    refalloc_result* raw = nullptr;
    if (refalloc_pre_assign(store_, slots.data(), slots.size(), auto_fill, &r, &raw) !=
        REFALLOC_OK) {
      report_error();
      return;
    }
    ResultPtr result(raw);
    save();
    print_result(result.get(), out_);
  }

  void view_menu() {
    for (;;) {
      const int choice = choose(kViewMenu, 7);
      if (choice == 7) return;
      const std::string date = ask_date();
      const char* league =
          choice == 1 ? nullptr
                      : refalloc_league_name(static_cast<refalloc_league>(choice - 2));
      refalloc_views* raw = nullptr;
      if (refalloc_query(store_, date.c_str(), league, nullptr, &raw) != REFALLOC_OK) {
        report_error();
        continue;
      }
      ViewsPtr views(raw);
      if (refalloc_views_count(views.get()) == 0) {
        out_ << "There are no appointments on " << date << ".\n";
      } else {
        print_views(views.get(), out_);
      }
    }
  }

  void change_assignment() {
    const std::string date = ask_date();
    const std::string fixture = ask("Insert fixture id :");
    const auto old_id = ask_official("Insert old official's id :", false);
    const auto new_id = ask_official("Insert new official id :", false);
    refalloc_role role;
    while (refalloc_parse_role(
               ask("Insert official's role (e.g Referee, Assistant Referee 1 etc) :").c_str(),
               &role) != REFALLOC_OK) {
      out_ << "Unknown role. Use Referee, Assistant Referee 1, Assistant Referee 2, "
              "Fourth Official or Observer.\n";
    }
    done(refalloc_change_assignment(store_, fixture.c_str(), old_id->c_str(), new_id->c_str(),
                                    role, date.c_str(), 0),
         "Assignment changed.");
  }

  refalloc_store* store_;
  std::istream& in_;
  std::ostream& out_;
  MenuOptions options_;
};

}  // namespace

int run_menu(refalloc_store* store, std::istream& in, std::ostream& out,
             const MenuOptions& options) {
  return Menu(store, in, out, options).run();
}

void print_views(const refalloc_views* views, std::ostream& out) {
  const size_t n = refalloc_views_count(views);
  for (size_t i = 0; i < n; ++i) {
    refalloc_view v;
    if (refalloc_views_get(views, i, &v) != REFALLOC_OK) continue;
    if (i) out << "\n";
    out << v.league << "\n"
        << v.home << "\n"
        << v.away << "\n"
        << v.location << "\n"
        << v.date << "\n"
        << v.time << "\n"
        << v.official_name << "\n"
        << v.role << "\n";
  }
}

void print_result(const refalloc_result* result, std::ostream& out) {
  if (refalloc_result_infeasible(result)) {
    out << "The required roles cannot all be filled; nothing was assigned.\n";
  } else {
    out << refalloc_result_created_count(result) << " assignment(s) made.\n";
  }
  const size_t n = refalloc_result_unfilled_count(result);
  for (size_t i = 0; i < n; ++i) {
    const char* fixture = nullptr;
    refalloc_role role;
    int required = 0;
    refalloc_result_unfilled(result, i, &fixture, &role, &required);
    out << "Unfilled: " << fixture << " " << refalloc_role_name(role)
        << (required ? " (required)" : " (optional)") << "\n";
  }
}

}  // namespace refalloc::tools
