// Copyright 2026 The owcfog Authors
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

/* C interface to the owcfog library.
 *
 * A session owns one configuration document. Functions return a status code;
 * on failure the session keeps a JSON diagnostic retrievable with
 * owc_session_last_error(). Returned strings stay valid until the next call
 * on the same session. */

#ifndef OWCFOG_OWCFOG_H_
#define OWCFOG_OWCFOG_H_

#include <stdint.h>

#if defined(_WIN32)
#define OWC_API __declspec(dllexport)
#else
#define OWC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum owc_status {
  OWC_OK = 0,
  OWC_INVALID_ARGUMENT = 1,
  OWC_CONFIG = 2,
  OWC_DOMAIN = 3,
  OWC_DEGENERATE_GEOMETRY = 4,
  OWC_INFEASIBLE = 5,
  OWC_RESOURCE = 6,
  OWC_IO = 7,
  OWC_INTERNAL = 8
} owc_status;

typedef struct owc_session owc_session;

OWC_API const char* owc_version(void);
OWC_API const char* owc_status_name(owc_status status);

/* Session with the built-in defaults. */
OWC_API owc_status owc_session_create(owc_session** out);
/* Defaults merged with the JSON document at `path`. On failure *out is still
 * a valid session holding the error, or NULL when allocation failed. */
OWC_API owc_status owc_session_create_from_file(const char* path, owc_session** out);
OWC_API void owc_session_destroy(owc_session* session);

/* "dotted.path=value"; the value is parsed as JSON, else taken as a string. */
OWC_API owc_status owc_session_override(owc_session* session, const char* assignment);
OWC_API owc_status owc_session_set_seed(owc_session* session, uint64_t seed);
/* Applies to both the allocation and placement solvers. */
OWC_API owc_status owc_session_set_time_limit(owc_session* session, double seconds);

/* Stage is one of channel, allocate, place, sweep, chain, validate. `fig` may
 * be NULL or one of 7a, 7b, 7c, 8, 9, 10, 11. Writes the bundle to `out_dir`;
 * an infeasible model also leaves out_dir/infeasible.json. */
OWC_API owc_status owc_run(owc_session* session, const char* stage, const char* out_dir,
                           const char* fig);

/* JSON texts. */
OWC_API const char* owc_session_last_error(const owc_session* session);
OWC_API const char* owc_session_last_summary(const owc_session* session);
OWC_API const char* owc_session_config(owc_session* session);
OWC_API const char* owc_session_config_hash(owc_session* session);

/* Stateless helpers. */
OWC_API owc_status owc_lambertian_order(double half_power_semi_angle_deg, double* out);
OWC_API owc_status owc_sinr_db(double gamma, double* out);

#ifdef __cplusplus
}
#endif

#endif /* OWCFOG_OWCFOG_H_ */
