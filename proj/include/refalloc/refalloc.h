/*
 * Copyright 2026 The refalloc Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * refalloc C API.
 *
 * Every call returns a refalloc_status. On failure, refalloc_last_error()
 * returns a message for the most recent failing call on the calling thread
 * (pre-assignment failures list one rejected slot per line).
 *
 * Objects handed out through `out` parameters are owned by the caller and
 * released with the matching *_free function. Strings returned by accessors
 * stay valid until their owning object is freed. Strings returned through
 * `char**` are released with refalloc_string_free().
 *
 * Dates are ISO 8601 strings ("2008-01-01"); times are "HH:MM" or
 * "HH:MM:SS". Identifiers are case-insensitive on input.
 */

#ifndef REFALLOC_REFALLOC_H_
#define REFALLOC_REFALLOC_H_

#include <stddef.h>
#include <stdint.h>

#if defined(REFALLOC_BUILDING_LIBRARY)
#define REFALLOC_API __attribute__((visibility("default")))
#else
#define REFALLOC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum refalloc_status {
  REFALLOC_OK = 0,
  REFALLOC_ERR_INVALID_ARGUMENT = 1,
  REFALLOC_ERR_MALFORMED_ID = 2,
  REFALLOC_ERR_DUPLICATE_ID = 3,
  REFALLOC_ERR_DUPLICATE_USERNAME = 4,
  REFALLOC_ERR_UNKNOWN_ID = 5,
  REFALLOC_ERR_HAS_ASSIGNMENTS = 6,
  REFALLOC_ERR_PARSE = 7,
  REFALLOC_ERR_INTEGRITY = 8,
  REFALLOC_ERR_IO = 9,
  REFALLOC_ERR_INVALID_PRE_ASSIGNMENT = 10,
  REFALLOC_ERR_SEARCH_BUDGET_EXCEEDED = 11,
  REFALLOC_ERR_NOT_ASSIGNED = 12,
  REFALLOC_ERR_INELIGIBLE_REPLACEMENT = 13,
  REFALLOC_ERR_DOUBLE_BOOKED_REPLACEMENT = 14,
  REFALLOC_ERR_UNAVAILABLE_REPLACEMENT = 15,
  REFALLOC_ERR_UNKNOWN_REFERENCE = 16,
  REFALLOC_ERR_DATE_MISMATCH = 17,
  REFALLOC_ERR_INTERNAL = 99
} refalloc_status;

/* Canonical league order. */
typedef enum refalloc_league {
  REFALLOC_LEAGUE_SPL = 0,
  REFALLOC_LEAGUE_SFL1 = 1,
  REFALLOC_LEAGUE_SFL2 = 2,
  REFALLOC_LEAGUE_SFL3 = 3,
  REFALLOC_LEAGUE_JUNIOR = 4,
  REFALLOC_LEAGUE_AMATEUR = 5,
  REFALLOC_LEAGUE_YOUTH = 6
} refalloc_league;

#define REFALLOC_LEAGUE_BIT(league) (1u << (unsigned)(league))
#define REFALLOC_ALL_LEAGUES 0x7Fu

/* Stage order. */
typedef enum refalloc_role {
  REFALLOC_ROLE_REFEREE = 0,
  REFALLOC_ROLE_ASSISTANT_REFEREE_1 = 1,
  REFALLOC_ROLE_ASSISTANT_REFEREE_2 = 2,
  REFALLOC_ROLE_FOURTH_OFFICIAL = 3,
  REFALLOC_ROLE_OBSERVER = 4
} refalloc_role;

typedef enum refalloc_experience {
  REFALLOC_EXPERIENCE_NONE = 0,
  REFALLOC_EXPERIENCE_LOW = 1,
  REFALLOC_EXPERIENCE_MEDIUM = 2,
  REFALLOC_EXPERIENCE_HIGH = 3
} refalloc_experience;

typedef enum refalloc_algorithm {
  REFALLOC_ALGORITHM_GREEDY = 0,
  REFALLOC_ALGORITHM_BACKTRACKING = 1
} refalloc_algorithm;

typedef enum refalloc_ordering {
  REFALLOC_ORDERING_BEST_FIRST = 0,
  REFALLOC_ORDERING_RESERVE_BEST = 1
} refalloc_ordering;

typedef struct refalloc_store refalloc_store;
typedef struct refalloc_result refalloc_result;
typedef struct refalloc_views refalloc_views;
typedef struct refalloc_officials refalloc_officials;
typedef struct refalloc_server refalloc_server;

REFALLOC_API const char* refalloc_version(void);
REFALLOC_API const char* refalloc_status_name(refalloc_status status);
REFALLOC_API const char* refalloc_last_error(void);
REFALLOC_API void refalloc_string_free(char* s);

/* ---- vocabulary helpers ------------------------------------------------ */

REFALLOC_API const char* refalloc_league_name(refalloc_league league); /* "SFL 1" */
REFALLOC_API const char* refalloc_role_name(refalloc_role role);       /* "Assistant Referee 1" */
REFALLOC_API refalloc_status refalloc_parse_league(const char* text, refalloc_league* out);
REFALLOC_API refalloc_status refalloc_parse_role(const char* text, refalloc_role* out);
/* Writes the normalized (uppercase) id into buf. */
REFALLOC_API refalloc_status refalloc_normalize_official_id(const char* raw, char* buf,
                                                            size_t buf_len);
REFALLOC_API int refalloc_is_official_id(const char* raw);
/* Day/month/year to ISO. Two-digit years mean 20yy. buf needs 11 bytes. */
REFALLOC_API refalloc_status refalloc_make_date(int day, int month, int year, char* buf,
                                                size_t buf_len);

/* ---- store ------------------------------------------------------------- */

REFALLOC_API refalloc_status refalloc_store_new(refalloc_store** out);
/* Loads `path` if it exists; refalloc_store_save() writes back to it. */
REFALLOC_API refalloc_status refalloc_store_open(const char* path, refalloc_store** out);
REFALLOC_API void refalloc_store_free(refalloc_store* store);
REFALLOC_API refalloc_status refalloc_store_save(refalloc_store* store);
REFALLOC_API uint64_t refalloc_store_version(const refalloc_store* store);
/* Replaces the registry with the file's content. */
REFALLOC_API refalloc_status refalloc_store_import(refalloc_store* store, const char* path);
REFALLOC_API refalloc_status refalloc_store_export(const refalloc_store* store, const char* path);
REFALLOC_API refalloc_status refalloc_store_export_string(const refalloc_store* store, char** out);

typedef struct refalloc_official_spec {
  const char* id;
  const char* name;
  int category; /* 1..10, 0 for none */
  refalloc_experience referee_experience;
  refalloc_experience observer_experience;
  const char* username;
  const char* password; /* NULL or "" leaves the account without web access */
} refalloc_official_spec;

typedef struct refalloc_fixture_spec {
  const char* id;
  const char* league; /* "SPL", "SFL 1", "Youth U19", ... */
  const char* home;
  const char* away;
  const char* location;
  const char* date;
  const char* time;
} refalloc_fixture_spec;

REFALLOC_API refalloc_status refalloc_add_official(refalloc_store* store,
                                                   const refalloc_official_spec* spec);
REFALLOC_API refalloc_status refalloc_remove_official(refalloc_store* store, const char* id,
                                                      int cascade);
REFALLOC_API refalloc_status refalloc_add_fixture(refalloc_store* store,
                                                  const refalloc_fixture_spec* spec);
REFALLOC_API refalloc_status refalloc_remove_fixture(refalloc_store* store, const char* id);
REFALLOC_API refalloc_status refalloc_declare_availability(refalloc_store* store,
                                                           const char* official_id,
                                                           const char* date);
REFALLOC_API refalloc_status refalloc_set_password(refalloc_store* store,
                                                   const char* official_id,
                                                   const char* password);

/* ---- allocation -------------------------------------------------------- */

typedef struct refalloc_request {
  const char* const* dates;
  size_t n_dates;
  unsigned leagues; /* REFALLOC_LEAGUE_BIT mask */
  refalloc_algorithm algorithm;
  refalloc_ordering ordering;
  int require_availability;
  uint64_t node_limit; /* backtracking; 0 keeps the default */
} refalloc_request;

/* All leagues, greedy, reserve-best, no availability check, no dates. */
REFALLOC_API void refalloc_request_init(refalloc_request* request);

/* Allocates over the request's scope. With commit != 0 the result is stored. */
REFALLOC_API refalloc_status refalloc_assign(refalloc_store* store,
                                             const refalloc_request* request, int commit,
                                             refalloc_result** out);

typedef struct refalloc_manual_slot {
  const char* fixture;
  refalloc_role role;
  const char* official; /* id */
} refalloc_manual_slot;

/* Validates and stores hand-picked slots; with auto_fill the rest of the
 * request's scope is allocated around them. Nothing is stored on error. */
REFALLOC_API refalloc_status refalloc_pre_assign(refalloc_store* store,
                                                 const refalloc_manual_slot* slots,
                                                 size_t n_slots, int auto_fill,
                                                 const refalloc_request* request,
                                                 refalloc_result** out);

REFALLOC_API size_t refalloc_result_assignment_count(const refalloc_result* result);
REFALLOC_API refalloc_status refalloc_result_assignment(const refalloc_result* result, size_t i,
                                                        const char** fixture,
                                                        const char** official,
                                                        refalloc_role* role);
REFALLOC_API size_t refalloc_result_created_count(const refalloc_result* result);
REFALLOC_API size_t refalloc_result_unfilled_count(const refalloc_result* result);
/* required is set to 1 for Required slots, 0 for best-effort ones. */
REFALLOC_API refalloc_status refalloc_result_unfilled(const refalloc_result* result, size_t i,
                                                      const char** fixture,
                                                      refalloc_role* role, int* required);
REFALLOC_API int refalloc_result_complete(const refalloc_result* result);
REFALLOC_API int refalloc_result_infeasible(const refalloc_result* result);
REFALLOC_API double refalloc_result_elapsed_ms(const refalloc_result* result);
REFALLOC_API void refalloc_result_free(refalloc_result* result);

/* `date` may be NULL; when given the fixture must be played that day. */
REFALLOC_API refalloc_status refalloc_change_assignment(refalloc_store* store,
                                                        const char* fixture,
                                                        const char* old_official,
                                                        const char* new_official,
                                                        refalloc_role role, const char* date,
                                                        int require_availability);

/* Number of rule violations in the stored assignments; the report lists one
 * per line. */
REFALLOC_API refalloc_status refalloc_validate(const refalloc_store* store,
                                               int check_availability, size_t* n_violations,
                                               char** report);

/* ---- queries ----------------------------------------------------------- */

typedef struct refalloc_view {
  const char* official_id;
  const char* official_name;
  const char* fixture_id;
  const char* league; /* display name */
  const char* home;
  const char* away;
  const char* location;
  const char* date; /* YYYY-MM-DD */
  const char* time; /* HH:MM:SS */
  const char* role;
} refalloc_view;

/* Any filter may be NULL. Rows come ordered by date, league, fixture, role. */
REFALLOC_API refalloc_status refalloc_query(const refalloc_store* store, const char* date,
                                            const char* league, const char* official,
                                            refalloc_views** out);
REFALLOC_API size_t refalloc_views_count(const refalloc_views* views);
REFALLOC_API refalloc_status refalloc_views_get(const refalloc_views* views, size_t i,
                                                refalloc_view* out);
REFALLOC_API void refalloc_views_free(refalloc_views* views);

REFALLOC_API refalloc_status refalloc_find_officials(const refalloc_store* store,
                                                     const char* name,
                                                     refalloc_officials** out);
REFALLOC_API size_t refalloc_officials_count(const refalloc_officials* list);
REFALLOC_API const char* refalloc_officials_id(const refalloc_officials* list, size_t i);
REFALLOC_API const char* refalloc_officials_name(const refalloc_officials* list, size_t i);
REFALLOC_API int refalloc_officials_category(const refalloc_officials* list, size_t i);
REFALLOC_API void refalloc_officials_free(refalloc_officials* list);

/* ---- HTTP service ------------------------------------------------------ */

/* Dispatches one request without a socket. `target` is path plus optional
 * query string. */
REFALLOC_API refalloc_status refalloc_service_handle(refalloc_store* store, const char* method,
                                                     const char* target, const char* body,
                                                     int* http_status, char** response_body);

/* Starts serving on a background thread. `listen` is "host:port" (port 0
 * picks a free one); `static_dir` may be NULL. */
REFALLOC_API refalloc_status refalloc_server_start(refalloc_store* store, const char* listen,
                                                   const char* static_dir,
                                                   refalloc_server** out);
REFALLOC_API int refalloc_server_port(const refalloc_server* server);
/* Stops the server and frees it. */
REFALLOC_API void refalloc_server_stop(refalloc_server* server);

#ifdef __cplusplus
}
#endif

#endif /* REFALLOC_REFALLOC_H_ */
