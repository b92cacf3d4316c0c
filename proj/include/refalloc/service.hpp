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

// JSON-over-HTTP facade for officials.
//
//   POST /api/availability   {"username","password","date"} or
//                            {"username","password","day","month","year"}
//                            -> 201 {"officialId","date"} | 401 | 422
//   GET  /api/assignments?date=YYYY-MM-DD&league=SPL&official=R001 -> 200 [...]
//   GET  /api/fixtures?date=YYYY-MM-DD&league=SPL                -> 200 [...]
//   GET  /api/health                                             -> 200
//
// Reads are open. Availability is the only credentialed route, and the
// credentials travel with every post (there is no session).

#ifndef REFALLOC_SERVICE_HPP_
#define REFALLOC_SERVICE_HPP_

#include <atomic>
#include <chrono>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "refalloc/store.hpp"

namespace refalloc::service {

struct Request {
  std::string method;  // "GET", "POST"
  std::string path;    // without the query string
  std::multimap<std::string, std::string> query;
  std::string body;
};

struct Response {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
};

// Wire encoding of one appointments row: exactly the seven columns
// officialName, home, away, location, date, time, role, in that order.
std::string encode_assignment_view(const AssignmentView& view);
std::string encode_assignment_views(const std::vector<AssignmentView>& views);

class Service {
 public:
  explicit Service(Store& store);
  ~Service();

  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  // Transport-independent dispatch; the HTTP server below forwards here.
  Response handle(const Request& request) const;

  // Binds the listening socket. Port 0 picks a free port; the bound port is
  // returned. Throws kIoError when binding fails.
  int bind(const std::string& host, int port);
  // Serves files from `dir` for non-API GET requests.
  void set_static_dir(const std::filesystem::path& dir);
  // Blocks until stop() is called.
  void run();
  // Blocks until run() is accepting connections.
  void wait_until_ready() const;
  void stop();

 private:
  Response post_availability(const Request& request) const;
  Response get_assignments(const Request& request) const;
  Response get_fixtures(const Request& request) const;
  Response get_health() const;

  Store& store_;
  std::chrono::steady_clock::time_point started_;
  struct Http;
  std::unique_ptr<Http> http_;
};

// Parses "host:port", "host" or ":port". Defaults: 127.0.0.1 and 8080.
std::pair<std::string, int> parse_listen_address(std::string_view spec);

}  // namespace refalloc::service

#endif  // REFALLOC_SERVICE_HPP_
