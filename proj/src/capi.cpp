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

#include "refalloc/refalloc.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <string>
#include <thread>
#include <vector>

#include "httplib.h"
#include "refalloc/allocator.hpp"
#include "refalloc/credentials.hpp"
#include "refalloc/data_file.hpp"
#include "refalloc/rules.hpp"
#include "refalloc/service.hpp"
#include "refalloc/store.hpp"

using namespace refalloc;

struct refalloc_store {
  std::unique_ptr<Store> store;
};

struct refalloc_result {
  AllocationResult result;
};

struct refalloc_views {
  struct Row {
    std::string official_id, official_name, fixture_id, league, home, away, location, date, time,
        role;
  };
  std::vector<Row> rows;
};

struct refalloc_officials {
  std::vector<Official> list;
};

struct refalloc_server {
  std::unique_ptr<service::Service> service;
  std::thread thread;
  int port = 0;
};

namespace {

thread_local std::string g_last_error;

refalloc_status fail(refalloc_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

refalloc_status status_of(ErrorCode code) {
  return static_cast<refalloc_status>(static_cast<int>(code) + 1);
}

// Runs `body`, translating exceptions into a status and the last-error text.
template <typename F>
refalloc_status guarded(F&& body) {
  try {
    body();
    return REFALLOC_OK;
  } catch (const Error& e) {
    std::string message = e.what();
    for (const std::string& d : e.details()) message += "\n" + d;
    return fail(status_of(e.code()), std::move(message));
  } catch (const std::exception& e) {
    return fail(REFALLOC_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(REFALLOC_ERR_INTERNAL, "unknown failure");
  }
}

void require(bool condition, const char* message) {
  if (!condition) throw Error(ErrorCode::kInvalidArgument, message);
}

std::string str(const char* s) { return s ? std::string(s) : std::string(); }

bool blank(const char* s) { return !s || !*s; }

Date date_arg(const char* s) {
  require(s != nullptr, "date is required");
  auto d = parse_iso_date(s);
  if (!d) throw Error(ErrorCode::kInvalidArgument, "bad date '" + std::string(s) + "'");
  return *d;
}

Role role_arg(refalloc_role r) {
  require(r >= REFALLOC_ROLE_REFEREE && r <= REFALLOC_ROLE_OBSERVER, "role out of range");
  return static_cast<Role>(r);
}

std::optional<Experience> experience_arg(refalloc_experience e) {
  require(e >= REFALLOC_EXPERIENCE_NONE && e <= REFALLOC_EXPERIENCE_HIGH,
          "experience out of range");
  if (e == REFALLOC_EXPERIENCE_NONE) return std::nullopt;
  return static_cast<Experience>(e - 1);
}

AllocationRequest request_arg(const refalloc_request* r) {
  require(r != nullptr, "request is required");
  AllocationRequest out;
  require(r->n_dates == 0 || r->dates != nullptr, "dates array is null");
  for (size_t i = 0; i < r->n_dates; ++i) out.dates.insert(date_arg(r->dates[i]));
  out.leagues.clear();
  for (League l : kAllLeagues) {
    if (r->leagues & REFALLOC_LEAGUE_BIT(static_cast<unsigned>(l))) out.leagues.insert(l);
  }
  require(r->algorithm == REFALLOC_ALGORITHM_GREEDY ||
              r->algorithm == REFALLOC_ALGORITHM_BACKTRACKING,
          "algorithm out of range");
  require(r->ordering == REFALLOC_ORDERING_BEST_FIRST ||
              r->ordering == REFALLOC_ORDERING_RESERVE_BEST,
          "ordering out of range");
  out.algorithm = static_cast<Algorithm>(r->algorithm);
  out.ordering = static_cast<OrderingPolicy>(r->ordering);
  out.require_availability = r->require_availability != 0;
  if (r->node_limit) out.node_limit = r->node_limit;
  return out;
}

refalloc_result* wrap(AllocationResult result) { return new refalloc_result{std::move(result)}; }

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* refalloc_version(void) { return "1.0.0"; }

const char* refalloc_status_name(refalloc_status status) {
  switch (status) {
    case REFALLOC_OK:
      return "OK";
    case REFALLOC_ERR_INTERNAL:
      return "Internal";
    default:
      break;
  }
  const int index = static_cast<int>(status) - 1;
  if (index >= 0 && index <= static_cast<int>(ErrorCode::kDateMismatch)) {
    static thread_local std::string name;
    name = std::string(to_string(static_cast<ErrorCode>(index)));
    return name.c_str();
  }
  return "Unknown";
}

const char* refalloc_last_error(void) { return g_last_error.c_str(); }

void refalloc_string_free(char* s) { std::free(s); }

const char* refalloc_league_name(refalloc_league league) {
  if (league < REFALLOC_LEAGUE_SPL || league > REFALLOC_LEAGUE_YOUTH) return "";
  return display_name(static_cast<League>(league)).data();
}

const char* refalloc_role_name(refalloc_role role) {
  if (role < REFALLOC_ROLE_REFEREE || role > REFALLOC_ROLE_OBSERVER) return "";
  return to_string(static_cast<Role>(role)).data();
}

refalloc_status refalloc_parse_league(const char* text, refalloc_league* out) {
  return guarded([&] {
    require(text && out, "null argument");
    auto l = parse_league(text);
    if (!l) throw Error(ErrorCode::kInvalidArgument, "unknown league '" + str(text) + "'");
    *out = static_cast<refalloc_league>(*l);
  });
}

refalloc_status refalloc_parse_role(const char* text, refalloc_role* out) {
  return guarded([&] {
    require(text && out, "null argument");
    auto r = parse_role(text);
    if (!r) throw Error(ErrorCode::kInvalidArgument, "unknown role '" + str(text) + "'");
    *out = static_cast<refalloc_role>(*r);
  });
}

refalloc_status refalloc_normalize_official_id(const char* raw, char* buf, size_t buf_len) {
  return guarded([&] {
    require(raw && buf, "null argument");
    const std::string id = OfficialId::parse(raw).str();
    require(id.size() < buf_len, "buffer too small");
    std::memcpy(buf, id.c_str(), id.size() + 1);
  });
}

int refalloc_is_official_id(const char* raw) {
  return raw && OfficialId::is_well_formed(raw) ? 1 : 0;
}

refalloc_status refalloc_make_date(int day, int month, int year, char* buf, size_t buf_len) {
  return guarded([&] {
    require(buf != nullptr, "null argument");
    auto d = make_date(day, month, year);
    if (!d) {
      throw Error(ErrorCode::kInvalidArgument, "no such date " + std::to_string(day) + "/" +
                                                   std::to_string(month) + "/" +
                                                   std::to_string(year));
    }
    const std::string iso = format_iso_date(*d);
    require(iso.size() < buf_len, "buffer too small");
    std::memcpy(buf, iso.c_str(), iso.size() + 1);
  });
}

// ---- store ----------------------------------------------------------------

refalloc_status refalloc_store_new(refalloc_store** out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    *out = new refalloc_store{std::make_unique<Store>()};
  });
}

refalloc_status refalloc_store_open(const char* path, refalloc_store** out) {
  return guarded([&] {
    require(!blank(path) && out, "path is required");
    *out = new refalloc_store{std::make_unique<Store>(std::filesystem::path(path))};
  });
}

void refalloc_store_free(refalloc_store* store) { delete store; }

refalloc_status refalloc_store_save(refalloc_store* store) {
  return guarded([&] {
    require(store != nullptr, "null store");
    store->store->save();
  });
}

uint64_t refalloc_store_version(const refalloc_store* store) {
  return store ? store->store->version() : 0;
}

refalloc_status refalloc_store_import(refalloc_store* store, const char* path) {
  return guarded([&] {
    require(store && !blank(path), "null argument");
    store->store->import_data(path);
  });
}

refalloc_status refalloc_store_export(const refalloc_store* store, const char* path) {
  return guarded([&] {
    require(store && !blank(path), "null argument");
    store->store->export_data(path);
  });
}

refalloc_status refalloc_store_export_string(const refalloc_store* store, char** out) {
  return guarded([&] {
    require(store && out, "null argument");
    *out = dup_string(format_data(*store->store->snapshot()));
  });
}

refalloc_status refalloc_add_official(refalloc_store* store, const refalloc_official_spec* spec) {
  return guarded([&] {
    require(store && spec, "null argument");
    Official o;
    o.id = OfficialId::parse(str(spec->id));
    o.name = str(spec->name);
    if (spec->category != 0) o.category = Category(spec->category);
    o.referee_experience = experience_arg(spec->referee_experience);
    o.observer_experience = experience_arg(spec->observer_experience);
    o.username = str(spec->username);
    if (!blank(spec->password)) o.password_digest = make_password_digest(spec->password);
    store->store->add_official(std::move(o));
  });
}

refalloc_status refalloc_remove_official(refalloc_store* store, const char* id, int cascade) {
  return guarded([&] {
    require(store && id, "null argument");
    store->store->remove_official(OfficialId::parse(id), cascade != 0);
  });
}

refalloc_status refalloc_add_fixture(refalloc_store* store, const refalloc_fixture_spec* spec) {
  return guarded([&] {
    require(store && spec, "null argument");
    Fixture fx;
    fx.id = FixtureId::parse(str(spec->id));
    auto league = parse_league(str(spec->league));
    if (!league) throw Error(ErrorCode::kInvalidArgument, "unknown league '" + str(spec->league) + "'");
    fx.league = *league;
    fx.home_team = str(spec->home);
    fx.away_team = str(spec->away);
    fx.location = str(spec->location);
    fx.date = date_arg(spec->date);
    auto time = TimeOfDay::parse(str(spec->time));
    if (!time) throw Error(ErrorCode::kInvalidArgument, "bad time '" + str(spec->time) + "'");
    fx.time = *time;
    store->store->add_fixture(std::move(fx));
  });
}

refalloc_status refalloc_remove_fixture(refalloc_store* store, const char* id) {
  return guarded([&] {
    require(store && id, "null argument");
    store->store->remove_fixture(FixtureId::parse(id));
  });
}

refalloc_status refalloc_declare_availability(refalloc_store* store, const char* official_id,
                                              const char* date) {
  return guarded([&] {
    require(store && official_id, "null argument");
    store->store->declare_availability(OfficialId::parse(official_id), date_arg(date));
  });
}

refalloc_status refalloc_set_password(refalloc_store* store, const char* official_id,
                                      const char* password) {
  return guarded([&] {
    require(store && official_id && !blank(password), "null argument");
    store->store->set_password(OfficialId::parse(official_id), password);
  });
}

// ---- allocation -----------------------------------------------------------

void refalloc_request_init(refalloc_request* request) {
  if (!request) return;
  *request = refalloc_request{};
  request->leagues = REFALLOC_ALL_LEAGUES;
  request->algorithm = REFALLOC_ALGORITHM_GREEDY;
  request->ordering = REFALLOC_ORDERING_RESERVE_BEST;
}

refalloc_status refalloc_assign(refalloc_store* store, const refalloc_request* request,
                                int commit, refalloc_result** out) {
  return guarded([&] {
    require(store && out, "null argument");
    const AllocationRequest req = request_arg(request);
    AllocationResult result;
    if (commit) {
      store->store->update([&](Snapshot& s) {
        result = allocate(req, s);
        apply(result, s);
      });
    } else {
      result = allocate(req, *store->store->snapshot());
    }
    *out = wrap(std::move(result));
  });
}

refalloc_status refalloc_pre_assign(refalloc_store* store, const refalloc_manual_slot* slots,
                                    size_t n_slots, int auto_fill,
                                    const refalloc_request* request, refalloc_result** out) {
  return guarded([&] {
    require(store && out, "null argument");
    require(n_slots == 0 || slots != nullptr, "slots array is null");
    const AllocationRequest req = request_arg(request);
    ManualSlots manual;
    std::vector<std::string> duplicates;
    for (size_t i = 0; i < n_slots; ++i) {
      require(slots[i].fixture && slots[i].official, "slot with null id");
      const auto key = std::make_pair(FixtureId::parse(slots[i].fixture), role_arg(slots[i].role));
      if (!manual.emplace(key, OfficialId::parse(slots[i].official)).second) {
        duplicates.push_back(key.first.str() + " " + std::string(to_string(key.second)) +
                             ": slot given twice");
      }
    }
    if (!duplicates.empty()) {
      throw Error(ErrorCode::kInvalidPreAssignment, "pre-assignment rejected",
                  std::move(duplicates));
    }
    AllocationResult result;
    store->store->update([&](Snapshot& s) {
      result = pre_assign(manual, auto_fill != 0, req, s);
      apply(result, s);
    });
    *out = wrap(std::move(result));
  });
}

size_t refalloc_result_assignment_count(const refalloc_result* result) {
  return result ? result->result.assignments.size() : 0;
}

refalloc_status refalloc_result_assignment(const refalloc_result* result, size_t i,
                                           const char** fixture, const char** official,
                                           refalloc_role* role) {
  return guarded([&] {
    require(result != nullptr, "null result");
    require(i < result->result.assignments.size(), "index out of range");
    const Assignment& a = result->result.assignments[i];
    if (fixture) *fixture = a.fixture.str().c_str();
    if (official) *official = a.official.str().c_str();
    if (role) *role = static_cast<refalloc_role>(a.role);
  });
}

size_t refalloc_result_created_count(const refalloc_result* result) {
  return result ? result->result.created.size() : 0;
}

size_t refalloc_result_unfilled_count(const refalloc_result* result) {
  return result ? result->result.unfilled.size() : 0;
}

refalloc_status refalloc_result_unfilled(const refalloc_result* result, size_t i,
                                         const char** fixture, refalloc_role* role,
                                         int* required) {
  return guarded([&] {
    require(result != nullptr, "null result");
    require(i < result->result.unfilled.size(), "index out of range");
    const UnfilledSlot& u = result->result.unfilled[i];
    if (fixture) *fixture = u.fixture.str().c_str();
    if (role) *role = static_cast<refalloc_role>(u.role);
    if (required) *required = u.presence == Presence::kRequired ? 1 : 0;
  });
}

int refalloc_result_complete(const refalloc_result* result) {
  return result && result->result.complete ? 1 : 0;
}

int refalloc_result_infeasible(const refalloc_result* result) {
  return result && result->result.infeasible ? 1 : 0;
}

double refalloc_result_elapsed_ms(const refalloc_result* result) {
  return result ? static_cast<double>(result->result.stats.elapsed.count()) / 1000.0 : 0.0;
}

void refalloc_result_free(refalloc_result* result) { delete result; }

refalloc_status refalloc_change_assignment(refalloc_store* store, const char* fixture,
                                           const char* old_official, const char* new_official,
                                           refalloc_role role, const char* date,
                                           int require_availability) {
  return guarded([&] {
    require(store && fixture && old_official && new_official, "null argument");
    ChangeOptions options;
    options.require_availability = require_availability != 0;
    if (date) options.expected_date = date_arg(date);
    const FixtureId fx = FixtureId::parse(fixture);
    const OfficialId from = OfficialId::parse(old_official);
    const OfficialId to = OfficialId::parse(new_official);
    const Role r = role_arg(role);
    store->store->update(
        [&](Snapshot& s) { change_assignment(s, fx, from, to, r, options); });
  });
}

refalloc_status refalloc_validate(const refalloc_store* store, int check_availability,
                                  size_t* n_violations, char** report) {
  return guarded([&] {
    require(store != nullptr, "null store");
    auto snap = store->store->snapshot();
    ValidateOptions options;
    options.check_availability = check_availability != 0;
    const auto violations = validate(snap->assignments, *snap, options);
    if (n_violations) *n_violations = violations.size();
    if (report) {
      std::string text;
      for (const Violation& v : violations) {
        text += std::string(to_string(v.kind)) + ": " + v.message + "\n";
      }
      *report = dup_string(text);
    }
  });
}

// ---- queries --------------------------------------------------------------

refalloc_status refalloc_query(const refalloc_store* store, const char* date, const char* league,
                               const char* official, refalloc_views** out) {
  return guarded([&] {
    require(store && out, "null argument");
    AssignmentFilter filter;
    if (date) filter.date = date_arg(date);
    if (league) {
      filter.league = parse_league(league);
      if (!filter.league) throw Error(ErrorCode::kInvalidArgument, "unknown league '" + str(league) + "'");
    }
    if (official) filter.official = OfficialId::parse(official);
    auto views = std::make_unique<refalloc_views>();
    for (const AssignmentView& v : store->store->query_assignments(filter)) {
      views->rows.push_back({v.official_id.str(), v.official_name, v.fixture_id.str(),
                             std::string(display_name(v.league)), v.home, v.away, v.location,
                             format_iso_date(v.date), v.time.hh_mm_ss(),
                             std::string(to_string(v.role))});
    }
    *out = views.release();
  });
}

size_t refalloc_views_count(const refalloc_views* views) { return views ? views->rows.size() : 0; }

refalloc_status refalloc_views_get(const refalloc_views* views, size_t i, refalloc_view* out) {
  return guarded([&] {
    require(views && out, "null argument");
    require(i < views->rows.size(), "index out of range");
    const auto& r = views->rows[i];
    *out = refalloc_view{r.official_id.c_str(), r.official_name.c_str(), r.fixture_id.c_str(),
                         r.league.c_str(),      r.home.c_str(),          r.away.c_str(),
                         r.location.c_str(),    r.date.c_str(),          r.time.c_str(),
                         r.role.c_str()};
  });
}

void refalloc_views_free(refalloc_views* views) { delete views; }

refalloc_status refalloc_find_officials(const refalloc_store* store, const char* name,
                                        refalloc_officials** out) {
  return guarded([&] {
    require(store && name && out, "null argument");
    *out = new refalloc_officials{store->store->find_officials_by_name(name)};
  });
}

size_t refalloc_officials_count(const refalloc_officials* list) {
  return list ? list->list.size() : 0;
}

const char* refalloc_officials_id(const refalloc_officials* list, size_t i) {
  return list && i < list->list.size() ? list->list[i].id.str().c_str() : nullptr;
}

const char* refalloc_officials_name(const refalloc_officials* list, size_t i) {
  return list && i < list->list.size() ? list->list[i].name.c_str() : nullptr;
}

int refalloc_officials_category(const refalloc_officials* list, size_t i) {
  if (!list || i >= list->list.size() || !list->list[i].category) return 0;
  return list->list[i].category->value();
}

void refalloc_officials_free(refalloc_officials* list) { delete list; }

// ---- HTTP service ---------------------------------------------------------

refalloc_status refalloc_service_handle(refalloc_store* store, const char* method,
                                        const char* target, const char* body, int* http_status,
                                        char** response_body) {
  return guarded([&] {
    require(store && method && target && http_status, "null argument");
    service::Request request;
    request.method = method;
    request.body = str(body);
    const std::string t = target;
    const auto q = t.find('?');
    request.path = t.substr(0, q);
    if (q != std::string::npos) {
      httplib::Params params;
      httplib::detail::parse_query_text(t.substr(q + 1), params);
      for (const auto& [k, v] : params) request.query.emplace(k, v);
    }
    service::Service svc(*store->store);
    const service::Response response = svc.handle(request);
    *http_status = response.status;
    if (response_body) *response_body = dup_string(response.body);
  });
}

refalloc_status refalloc_server_start(refalloc_store* store, const char* listen,
                                      const char* static_dir, refalloc_server** out) {
  return guarded([&] {
    require(store && out, "null argument");
    auto [host, port] = service::parse_listen_address(str(listen));
    auto server = std::make_unique<refalloc_server>();
    server->service = std::make_unique<service::Service>(*store->store);
    if (!blank(static_dir)) server->service->set_static_dir(static_dir);
    server->port = server->service->bind(host, port);
    server->thread = std::thread([svc = server->service.get()] { svc->run(); });
    server->service->wait_until_ready();
    *out = server.release();
  });
}

int refalloc_server_port(const refalloc_server* server) { return server ? server->port : -1; }

void refalloc_server_stop(refalloc_server* server) {
  if (!server) return;
  server->service->stop();
  if (server->thread.joinable()) server->thread.join();
  delete server;
}

}  // extern "C"
