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

#include "refalloc/service.hpp"

#include <charconv>

#include "httplib.h"
#include "json.hpp"
#include "refalloc/credentials.hpp"
#include "text.hpp"

namespace refalloc::service {

using nlohmann::ordered_json;

namespace {

ordered_json view_json(const AssignmentView& v) {
  ordered_json j;
  j["officialName"] = v.official_name;
  j["home"] = v.home;
  j["away"] = v.away;
  j["location"] = v.location;
  j["date"] = format_iso_date(v.date);
  j["time"] = v.time.hh_mm_ss();
  j["role"] = std::string(to_string(v.role));
  return j;
}

Response json_response(int status, const ordered_json& body) {
  return {status, body.dump(), "application/json"};
}

Response error_response(int status, const std::string& message) {
  return json_response(status, ordered_json{{"error", message}});
}

std::optional<std::string> single_param(const Request& r, const std::string& key) {
  auto it = r.query.find(key);
  if (it == r.query.end()) return std::nullopt;
  return it->second;
}

// A digest every unknown username is checked against, so that a miss costs
// the same as a wrong password.
const std::string& decoy_digest() {
  static const std::string digest = make_password_digest("refalloc-decoy");
  return digest;
}

std::optional<int> json_int(const ordered_json& body, const char* key) {
  if (!body.contains(key)) return std::nullopt;
  const auto& v = body[key];
  if (v.is_number_integer()) return v.get<int>();
  if (v.is_string()) {
    const std::string s(text::trim(v.get<std::string>()));
    int out = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (ec == std::errc{} && ptr == s.data() + s.size() && !s.empty()) return out;
  }
  return std::nullopt;
}

}  // namespace

std::string encode_assignment_view(const AssignmentView& view) { return view_json(view).dump(); }

std::string encode_assignment_views(const std::vector<AssignmentView>& views) {
  ordered_json arr = ordered_json::array();
  for (const AssignmentView& v : views) arr.push_back(view_json(v));
  return arr.dump();
}

struct Service::Http {
  httplib::Server server;
  std::string host;
  int port = 0;
};

Service::Service(Store& store)
    : store_(store), started_(std::chrono::steady_clock::now()), http_(std::make_unique<Http>()) {}

Service::~Service() { stop(); }

Response Service::handle(const Request& r) const {
  try {
    if (r.path == "/api/availability") {
      if (r.method != "POST") return error_response(405, "use POST");
      return post_availability(r);
    }
    if (r.path == "/api/assignments" || r.path == "/api/fixtures" || r.path == "/api/health") {
      if (r.method != "GET") return error_response(405, "use GET");
      if (r.path == "/api/assignments") return get_assignments(r);
      if (r.path == "/api/fixtures") return get_fixtures(r);
      return get_health();
    }
    return error_response(404, "no such route");
  } catch (const Error& e) {
    return error_response(500, e.what());
  }
}

Response Service::post_availability(const Request& r) const {
  ordered_json body = ordered_json::parse(r.body, nullptr, false);
  if (body.is_discarded() || !body.is_object()) return error_response(422, "body is not a JSON object");

  const std::string username =
      body.contains("username") && body["username"].is_string() ? body["username"].get<std::string>() : "";
  const std::string password =
      body.contains("password") && body["password"].is_string() ? body["password"].get<std::string>() : "";

  auto snap = store_.snapshot();
  const Official* who = nullptr;
  const std::string user_key = text::lower(text::trim(username));
  for (const auto& [id, o] : snap->officials) {
    if (!user_key.empty() && text::lower(o.username) == user_key) who = &o;
  }
  // Always run exactly one digest verification.
  const std::string& digest =
      who && !who->password_digest.empty() ? who->password_digest : decoy_digest();
  const bool ok = verify_password(password, digest) && who && !who->password_digest.empty();
  if (!ok) return error_response(401, "invalid credentials");

  std::optional<Date> date;
  if (body.contains("date")) {
    if (body["date"].is_string()) date = parse_iso_date(body["date"].get<std::string>());
  } else {
    auto d = json_int(body, "day"), m = json_int(body, "month"), y = json_int(body, "year");
    if (d && m && y) date = make_date(*d, *m, *y);
  }
  if (!date) return error_response(422, "invalid date");

  const OfficialId id = who->id;
  store_.declare_availability(id, *date);
  store_.save();
  return json_response(201, ordered_json{{"officialId", id.str()}, {"date", format_iso_date(*date)}});
}

Response Service::get_assignments(const Request& r) const {
  AssignmentFilter filter;
  if (auto v = single_param(r, "date")) {
    filter.date = parse_iso_date(*v);
    if (!filter.date) return error_response(422, "bad date '" + *v + "'");
  }
  if (auto v = single_param(r, "league")) {
    filter.league = parse_league(*v);
    if (!filter.league) return error_response(422, "unknown league '" + *v + "'");
  }
  if (auto v = single_param(r, "official")) {
    if (!OfficialId::is_well_formed(*v)) return error_response(422, "bad official id '" + *v + "'");
    filter.official = OfficialId::parse(*v);
  }
  return {200, encode_assignment_views(store_.query_assignments(filter)), "application/json"};
}

Response Service::get_fixtures(const Request& r) const {
  std::optional<Date> date;
  std::optional<League> league;
  if (auto v = single_param(r, "date")) {
    date = parse_iso_date(*v);
    if (!date) return error_response(422, "bad date '" + *v + "'");
  }
  if (auto v = single_param(r, "league")) {
    league = parse_league(*v);
    if (!league) return error_response(422, "unknown league '" + *v + "'");
  }
  auto snap = store_.snapshot();
  std::vector<const Fixture*> rows;
  for (const auto& [id, fx] : snap->fixtures) {
    if (date && fx.date != *date) continue;
    if (league && fx.league != *league) continue;
    rows.push_back(&fx);
  }
  std::stable_sort(rows.begin(), rows.end(), [](const Fixture* a, const Fixture* b) {
    return std::tie(a->date, a->league, a->id) < std::tie(b->date, b->league, b->id);
  });
  ordered_json arr = ordered_json::array();
  for (const Fixture* fx : rows) {
    arr.push_back(ordered_json{{"fixtureId", fx->id.str()},
                               {"league", std::string(to_string(fx->league))},
                               {"home", fx->home_team},
                               {"away", fx->away_team},
                               {"location", fx->location},
                               {"date", format_iso_date(fx->date)},
                               {"time", fx->time.hh_mm_ss()}});
  }
  return json_response(200, arr);
}

Response Service::get_health() const {
  const auto uptime = std::chrono::duration_cast<std::chrono::seconds>(
      std::chrono::steady_clock::now() - started_);
  return json_response(200, ordered_json{{"status", "ok"},
                                         {"version", store_.version()},
                                         {"uptimeSeconds", uptime.count()}});
}

int Service::bind(const std::string& host, int port) {
  auto forward = [this](const httplib::Request& req, httplib::Response& res) {
    Request r{req.method, req.path, {}, req.body};
    for (const auto& [k, v] : req.params) r.query.emplace(k, v);
    const Response out = handle(r);
    res.status = out.status;
    res.set_content(out.body, out.content_type);
  };
  http_->server.Get("/api/.*", forward);
  http_->server.Post("/api/.*", forward);
  http_->host = host;
  if (port == 0) {
    http_->port = http_->server.bind_to_any_port(host);
  } else {
    http_->port = http_->server.bind_to_port(host, port) ? port : -1;
  }
  if (http_->port < 0) {
    throw Error(ErrorCode::kIoError, "cannot listen on " + host + ":" + std::to_string(port));
  }
  return http_->port;
}

void Service::set_static_dir(const std::filesystem::path& dir) {
  if (!http_->server.set_mount_point("/", dir.string())) {
    throw Error(ErrorCode::kIoError, "static directory not found: " + dir.string());
  }
}

void Service::run() { http_->server.listen_after_bind(); }

void Service::wait_until_ready() const { http_->server.wait_until_ready(); }

void Service::stop() {
  if (http_ && http_->server.is_running()) http_->server.stop();
}

std::pair<std::string, int> parse_listen_address(std::string_view spec) {
  spec = text::trim(spec);
  std::string host = "127.0.0.1";
  int port = 8080;
  const auto colon = spec.rfind(':');
  std::string_view host_part = colon == std::string_view::npos ? spec : spec.substr(0, colon);
  if (!host_part.empty()) host = std::string(host_part);
  if (colon != std::string_view::npos) {
    const std::string_view p = spec.substr(colon + 1);
    auto [ptr, ec] = std::from_chars(p.data(), p.data() + p.size(), port);
    if (ec != std::errc{} || ptr != p.data() + p.size() || port < 0 || port > 65535) {
      throw Error(ErrorCode::kInvalidArgument, "bad listen address '" + std::string(spec) + "'");
    }
  }
  return {host, port};
}

}  // namespace refalloc::service
