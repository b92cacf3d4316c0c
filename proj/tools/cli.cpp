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

#include "cli.hpp"

#include <csignal>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "handles.hpp"
#include "menu.hpp"

namespace refalloc::tools {

namespace {

const std::map<std::string, refalloc_experience> kExperiences = {
    {"none", REFALLOC_EXPERIENCE_NONE},
    {"low", REFALLOC_EXPERIENCE_LOW},
    {"medium", REFALLOC_EXPERIENCE_MEDIUM},
    {"high", REFALLOC_EXPERIENCE_HIGH},
};

const std::map<std::string, refalloc_algorithm> kAlgorithms = {
    {"greedy", REFALLOC_ALGORITHM_GREEDY},
    {"backtracking", REFALLOC_ALGORITHM_BACKTRACKING},
};

const std::map<std::string, refalloc_ordering> kOrderings = {
    {"best-first", REFALLOC_ORDERING_BEST_FIRST},
    {"reserve-best", REFALLOC_ORDERING_RESERVE_BEST},
};

struct Args {
  std::string store;
  bool backtracking = false;

  std::string file;

  std::vector<std::string> dates;
  std::vector<std::string> leagues;
  refalloc_algorithm algorithm = REFALLOC_ALGORITHM_GREEDY;
  refalloc_ordering ordering = REFALLOC_ORDERING_RESERVE_BEST;
  bool require_availability = false;
  uint64_t node_limit = 0;
  bool dry_run = false;

  std::string date;
  std::string league;
  std::string official;

  std::string fixture;
  std::string old_official;
  std::string new_official;
  std::string role;

  std::map<refalloc_role, std::string> manual;
  bool auto_fill = false;

  bool check_availability = false;

  std::string id;
  std::string name;
  int category = 0;
  refalloc_experience referee_experience = REFALLOC_EXPERIENCE_NONE;
  refalloc_experience observer_experience = REFALLOC_EXPERIENCE_NONE;
  std::string username;
  std::string password;
  bool cascade = false;

  std::string home;
  std::string away;
  std::string location;
  std::string time;

  std::string listen = "127.0.0.1:8080";
  std::string static_dir;
};

const char* opt(const std::string& s) { return s.empty() ? nullptr : s.c_str(); }

class Runner {
 public:
  Runner(refalloc_store* store, const Args& args, std::ostream& out, std::ostream& err)
      : store_(store), a_(args), out_(out), err_(err) {}

  int failed() {
    err_ << "error: " << refalloc_last_error() << "\n";
    return kExitFailed;
  }

  // Saves after a successful mutation.
  int commit(refalloc_status status) {
    if (status != REFALLOC_OK) return failed();
    if (refalloc_store_save(store_) != REFALLOC_OK) {
      err_ << "error: " << refalloc_last_error() << "\n";
      return kExitStore;
    }
    return kExitOk;
  }

  bool league_mask(unsigned* mask) {
    if (a_.leagues.empty()) {
      *mask = REFALLOC_ALL_LEAGUES;
      return true;
    }
    *mask = 0;
    for (const std::string& l : a_.leagues) {
      refalloc_league parsed;
      if (refalloc_parse_league(l.c_str(), &parsed) != REFALLOC_OK) return false;
      *mask |= REFALLOC_LEAGUE_BIT(parsed);
    }
    return true;
  }

  bool build_request(refalloc_request* r, std::vector<const char*>* dates) {
    refalloc_request_init(r);
    for (const std::string& d : a_.dates) dates->push_back(d.c_str());
    r->dates = dates->data();
    r->n_dates = dates->size();
    if (!league_mask(&r->leagues)) return false;
    r->algorithm = a_.backtracking ? REFALLOC_ALGORITHM_BACKTRACKING : a_.algorithm;
    r->ordering = a_.ordering;
    r->require_availability = a_.require_availability;
    r->node_limit = a_.node_limit;
    return true;
  }

  int assign() {
    refalloc_request r;
    std::vector<const char*> dates;
    if (!build_request(&r, &dates)) return failed();
    refalloc_result* raw = nullptr;
    if (refalloc_assign(store_, &r, a_.dry_run ? 0 : 1, &raw) != REFALLOC_OK) return failed();
    ResultPtr result(raw);
    print_result(result.get(), out_);
    if (!a_.dry_run) {
      if (int rc = commit(REFALLOC_OK)) return rc;
    }
    return refalloc_result_infeasible(result.get()) ? kExitFailed : kExitOk;
  }

  int pre_assign() {
    refalloc_request r;
    std::vector<const char*> dates;
    if (!build_request(&r, &dates)) return failed();
    std::vector<refalloc_manual_slot> slots;
    for (const auto& [role, id] : a_.manual) {
      if (!id.empty()) slots.push_back({a_.fixture.c_str(), role, id.c_str()});
    }
    refalloc_result* raw = nullptr;
    if (refalloc_pre_assign(store_, slots.data(), slots.size(), a_.auto_fill, &r, &raw) !=
        REFALLOC_OK) {
      return failed();
    }
    ResultPtr result(raw);
    print_result(result.get(), out_);
    return commit(REFALLOC_OK);
  }

  int view() {
    refalloc_views* raw = nullptr;
    if (refalloc_query(store_, opt(a_.date), opt(a_.league), opt(a_.official), &raw) !=
        REFALLOC_OK) {
      return failed();
    }
    ViewsPtr views(raw);
    if (refalloc_views_count(views.get()) == 0) {
      out_ << "There are no appointments.\n";
    } else {
      print_views(views.get(), out_);
    }
    return kExitOk;
  }

  int change() {
    refalloc_role role;
    if (refalloc_parse_role(a_.role.c_str(), &role) != REFALLOC_OK) return failed();
    return commit(refalloc_change_assignment(store_, a_.fixture.c_str(), a_.old_official.c_str(),
                                             a_.new_official.c_str(), role, opt(a_.date),
                                             a_.require_availability));
  }

  int validate() {
    size_t n = 0;
    char* report = nullptr;
    if (refalloc_validate(store_, a_.check_availability, &n, &report) != REFALLOC_OK) {
      return failed();
    }
    const std::string text = take_string(report);
    if (n == 0) {
      out_ << "No violations.\n";
      return kExitOk;
    }
    out_ << text;
    return kExitFailed;
  }

  int add_official() {
    const refalloc_official_spec spec{a_.id.c_str(),       a_.name.c_str(),
                                      a_.category,         a_.referee_experience,
                                      a_.observer_experience, a_.username.c_str(),
                                      opt(a_.password)};
    return commit(refalloc_add_official(store_, &spec));
  }

  int add_fixture() {
    const refalloc_fixture_spec spec{a_.id.c_str(),   a_.league.c_str(),   a_.home.c_str(),
                                     a_.away.c_str(), a_.location.c_str(), a_.date.c_str(),
                                     a_.time.c_str()};
    return commit(refalloc_add_fixture(store_, &spec));
  }

  int serve() {
    // Block the shutdown signals before the server threads start so that
    // only sigwait() below sees them.
    sigset_t signals;
    sigemptyset(&signals);
    sigaddset(&signals, SIGINT);
    sigaddset(&signals, SIGTERM);
    pthread_sigmask(SIG_BLOCK, &signals, nullptr);
    refalloc_server* server = nullptr;
    if (refalloc_server_start(store_, a_.listen.c_str(), opt(a_.static_dir), &server) !=
        REFALLOC_OK) {
      return failed();
    }
    out_ << "listening on port " << refalloc_server_port(server) << std::endl;
    int sig = 0;
    sigwait(&signals, &sig);
    refalloc_server_stop(server);
    return kExitOk;
  }

 private:
  refalloc_store* store_;
  const Args& a_;
  std::ostream& out_;
  std::ostream& err_;
};

}  // namespace

int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out,
            std::ostream& err) {
  Args a;
  CLI::App app{"Assigns match officials to fixtures.", "refalloc"};
  app.add_option("--store", a.store, "Data file")->envname("REFALLOC_STORE");
  app.add_flag("--backtracking", a.backtracking)->group("");

  auto* menu = app.add_subcommand("menu", "Interactive menu (the default)");

  auto* import_cmd = app.add_subcommand("import", "Replace the store's content with a file");
  import_cmd->add_option("file", a.file)->required();
  auto* export_cmd = app.add_subcommand("export", "Write the store's content to a file");
  export_cmd->add_option("file", a.file)->required();

  auto add_scope = [&](CLI::App* cmd) {
    cmd->add_option("--date", a.dates, "Match date, YYYY-MM-DD (repeatable)")->required();
    cmd->add_option("--league", a.leagues, "League (repeatable; default all)");
    cmd->add_option("--algorithm", a.algorithm)
        ->transform(CLI::CheckedTransformer(kAlgorithms, CLI::ignore_case));
    cmd->add_option("--ordering", a.ordering)
        ->transform(CLI::CheckedTransformer(kOrderings, CLI::ignore_case));
    cmd->add_flag("--require-availability", a.require_availability);
    cmd->add_option("--node-limit", a.node_limit);
  };
  auto* assign = app.add_subcommand("assign", "Assign officials automatically");
  add_scope(assign);
  assign->add_flag("--dry-run", a.dry_run, "Show the result without storing it");

  auto* pre = app.add_subcommand("pre-assign", "Store hand-picked officials for one fixture");
  add_scope(pre);
  pre->add_option("--fixture", a.fixture)->required();
  pre->add_option("--referee", a.manual[REFALLOC_ROLE_REFEREE]);
  pre->add_option("--ar1", a.manual[REFALLOC_ROLE_ASSISTANT_REFEREE_1]);
  pre->add_option("--ar2", a.manual[REFALLOC_ROLE_ASSISTANT_REFEREE_2]);
  pre->add_option("--fourth", a.manual[REFALLOC_ROLE_FOURTH_OFFICIAL]);
  pre->add_option("--observer", a.manual[REFALLOC_ROLE_OBSERVER]);
  pre->add_flag("--auto-fill", a.auto_fill, "Allocate the remaining slots in scope");

  auto* view = app.add_subcommand("view", "List appointments");
  view->add_option("--date", a.date);
  view->add_option("--league", a.league);
  view->add_option("--official", a.official);

  auto* change = app.add_subcommand("change", "Replace the official in one slot");
  change->add_option("--fixture", a.fixture)->required();
  change->add_option("--old", a.old_official)->required();
  change->add_option("--new", a.new_official)->required();
  change->add_option("--role", a.role)->required();
  change->add_option("--date", a.date);
  change->add_flag("--require-availability", a.require_availability);

  auto* validate = app.add_subcommand("validate", "Check the stored assignments");
  validate->add_flag("--check-availability", a.check_availability);

  auto* add_official = app.add_subcommand("add-official", "Register an official");
  add_official->add_option("--id", a.id)->required();
  add_official->add_option("--name", a.name)->required();
  add_official->add_option("--category", a.category)->check(CLI::Range(1, 10));
  add_official->add_option("--referee-experience", a.referee_experience)
      ->transform(CLI::CheckedTransformer(kExperiences, CLI::ignore_case));
  add_official->add_option("--observer-experience", a.observer_experience)
      ->transform(CLI::CheckedTransformer(kExperiences, CLI::ignore_case));
  add_official->add_option("--username", a.username)->required();
  add_official->add_option("--password", a.password);

  auto* remove_official = app.add_subcommand("remove-official", "Remove an official");
  remove_official->add_option("--id", a.id)->required();
  remove_official->add_flag("--cascade", a.cascade, "Also remove their assignments");

  auto* add_fixture = app.add_subcommand("add-fixture", "Register a fixture");
  add_fixture->add_option("--id", a.id)->required();
  add_fixture->add_option("--league", a.league)->required();
  add_fixture->add_option("--home", a.home)->required();
  add_fixture->add_option("--away", a.away)->required();
  add_fixture->add_option("--location", a.location)->required();
  add_fixture->add_option("--date", a.date)->required();
  add_fixture->add_option("--time", a.time)->required();

  auto* remove_fixture = app.add_subcommand("remove-fixture", "Remove a fixture");
  remove_fixture->add_option("--id", a.id)->required();

  auto* declare = app.add_subcommand("declare-availability", "Record an available date");
  declare->add_option("--official", a.official)->required();
  declare->add_option("--date", a.date)->required();

  auto* set_password = app.add_subcommand("set-password", "Set an official's password");
  set_password->add_option("--official", a.official)->required();
  set_password->add_option("--password", a.password)->required();

  auto* serve = app.add_subcommand("serve", "Run the officials' web service");
  serve->add_option("--listen", a.listen, "host:port")->envname("REFALLOC_LISTEN");
  serve->add_option("--static-dir", a.static_dir, "Directory served at /");

  app.require_subcommand(0, 1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  if (a.store.empty()) {
    err << "error: no data file; pass --store or set REFALLOC_STORE\n";
    return kExitUsage;
  }
  refalloc_store* raw = nullptr;
  if (refalloc_store_open(a.store.c_str(), &raw) != REFALLOC_OK) {
    err << "error: " << refalloc_last_error() << "\n";
    return kExitStore;
  }
  StorePtr store(raw);
  Runner run(store.get(), a, out, err);

  if (app.got_subcommand(import_cmd)) return run.commit(refalloc_store_import(store.get(), a.file.c_str()));
  if (app.got_subcommand(export_cmd)) {
    return refalloc_store_export(store.get(), a.file.c_str()) == REFALLOC_OK ? kExitOk
                                                                             : run.failed();
  }
  if (app.got_subcommand(assign)) return run.assign();
  if (app.got_subcommand(pre)) return run.pre_assign();
  if (app.got_subcommand(view)) return run.view();
  if (app.got_subcommand(change)) return run.change();
  if (app.got_subcommand(validate)) return run.validate();
  if (app.got_subcommand(add_official)) return run.add_official();
  if (app.got_subcommand(remove_official)) {
    return run.commit(refalloc_remove_official(store.get(), a.id.c_str(), a.cascade));
  }
  if (app.got_subcommand(add_fixture)) return run.add_fixture();
  if (app.got_subcommand(remove_fixture)) {
    return run.commit(refalloc_remove_fixture(store.get(), a.id.c_str()));
  }
  if (app.got_subcommand(declare)) {
    return run.commit(
        refalloc_declare_availability(store.get(), a.official.c_str(), a.date.c_str()));
  }
  if (app.got_subcommand(set_password)) {
    return run.commit(refalloc_set_password(store.get(), a.official.c_str(), a.password.c_str()));
  }
  if (app.got_subcommand(serve)) return run.serve();
  (void)menu;
  return run_menu(store.get(), in, out, MenuOptions{a.backtracking}) == 0 ? kExitOk : kExitStore;
}

}  // namespace refalloc::tools
