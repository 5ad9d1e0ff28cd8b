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

#include "owcfog/owcfog.h"

#include <exception>
#include <new>
#include <string>

#include "owcfog/channel.hpp"
#include "owcfog/config.hpp"
#include "owcfog/pipeline.hpp"
#include "owcfog/signal.hpp"

using owcfog::config::json;

struct owc_session {
  json config = owcfog::config::Defaults();
  std::string error = "{}";
  std::string summary = "{}";
  std::string scratch;
};

namespace {

owc_status StatusFor(owcfog::ErrorKind kind) {
  using owcfog::ErrorKind;
  switch (kind) {
    case ErrorKind::kInvalidArgument: return OWC_INVALID_ARGUMENT;
    case ErrorKind::kDomain: return OWC_DOMAIN;
    case ErrorKind::kDegenerateGeometry: return OWC_DEGENERATE_GEOMETRY;
    case ErrorKind::kResource: return OWC_RESOURCE;
    case ErrorKind::kInfeasible: return OWC_INFEASIBLE;
    case ErrorKind::kConfig: return OWC_CONFIG;
    case ErrorKind::kIo: return OWC_IO;
  }
  return OWC_INTERNAL;
}

// Runs `fn`, translating exceptions into a status and a JSON diagnostic.
template <typename Fn>
owc_status Guard(owc_session* s, Fn&& fn) {
  json diag;
  owc_status status = OWC_OK;
  try {
    fn();
    if (s) s->error = "{}";
    return OWC_OK;
  } catch (const owcfog::InfeasibleError& e) {
    status = OWC_INFEASIBLE;
    diag = {{"message", e.what()}, {"constraint", e.constraint()}};
  } catch (const owcfog::Error& e) {
    status = StatusFor(e.kind());
    diag = {{"message", e.what()}};
  } catch (const json::exception& e) {
    status = OWC_CONFIG;
    diag = {{"message", e.what()}};
  } catch (const std::bad_alloc&) {
    status = OWC_RESOURCE;
    diag = {{"message", "out of memory"}};
  } catch (const std::exception& e) {
    status = OWC_INTERNAL;
    diag = {{"message", e.what()}};
  }
  diag["status"] = owc_status_name(status);
  if (s) s->error = diag.dump();
  return status;
}

}  // namespace

extern "C" {

const char* owc_version(void) { return owcfog::pipeline::kVersion; }

const char* owc_status_name(owc_status status) {
  switch (status) {
    case OWC_OK: return "ok";
    case OWC_INVALID_ARGUMENT: return "invalid_argument";
    case OWC_CONFIG: return "config";
    case OWC_DOMAIN: return "domain";
    case OWC_DEGENERATE_GEOMETRY: return "degenerate_geometry";
    case OWC_INFEASIBLE: return "infeasible";
    case OWC_RESOURCE: return "resource";
    case OWC_IO: return "io";
    case OWC_INTERNAL: return "internal";
  }
  return "unknown";
}

owc_status owc_session_create(owc_session** out) {
  if (!out) return OWC_INVALID_ARGUMENT;
  *out = new (std::nothrow) owc_session;
  return *out ? OWC_OK : OWC_RESOURCE;
}

owc_status owc_session_create_from_file(const char* path, owc_session** out) {
  const owc_status st = owc_session_create(out);
  if (st != OWC_OK) return st;
  owc_session* s = *out;
  return Guard(s, [&] {
    if (!path) throw owcfog::Error(owcfog::ErrorKind::kInvalidArgument, "null path");
    s->config = owcfog::config::LoadFile(path);
  });
}

void owc_session_destroy(owc_session* session) { delete session; }

owc_status owc_session_override(owc_session* s, const char* assignment) {
  if (!s) return OWC_INVALID_ARGUMENT;
  return Guard(s, [&] {
    if (!assignment) throw owcfog::Error(owcfog::ErrorKind::kInvalidArgument, "null override");
    json doc = s->config;
    owcfog::config::ApplyOverride(doc, assignment);
    s->config = std::move(doc);
  });
}

owc_status owc_session_set_seed(owc_session* s, uint64_t seed) {
  if (!s) return OWC_INVALID_ARGUMENT;
  return Guard(s, [&] { s->config["scenario"]["seed"] = seed; });
}

owc_status owc_session_set_time_limit(owc_session* s, double seconds) {
  if (!s) return OWC_INVALID_ARGUMENT;
  return Guard(s, [&] {
    if (!(seconds > 0.0)) {
      throw owcfog::Error(owcfog::ErrorKind::kInvalidArgument, "time limit must be positive");
    }
    s->config["allocation"]["time_limit_s"] = seconds;
    s->config["placement"]["time_limit_s"] = seconds;
  });
}

owc_status owc_run(owc_session* s, const char* stage, const char* out_dir,
                   const char* fig) {
  if (!s) return OWC_INVALID_ARGUMENT;
  return Guard(s, [&] {
    if (!stage || !out_dir) {
      throw owcfog::Error(owcfog::ErrorKind::kInvalidArgument, "null stage or output directory");
    }
    owcfog::pipeline::RunOptions opts;
    opts.out_dir = out_dir;
    if (fig) opts.fig = fig;
    s->summary = "{}";
    const auto result = owcfog::pipeline::Run(stage, s->config, opts);
    json summary = result.summary;
    summary["stage"] = result.stage;
    summary["files"] = result.files;
    s->summary = summary.dump();
  });
}

const char* owc_session_last_error(const owc_session* s) {
  return s ? s->error.c_str() : "{}";
}

const char* owc_session_last_summary(const owc_session* s) {
  return s ? s->summary.c_str() : "{}";
}

const char* owc_session_config(owc_session* s) {
  if (!s) return "{}";
  s->scratch = s->config.dump();
  return s->scratch.c_str();
}

const char* owc_session_config_hash(owc_session* s) {
  if (!s) return "";
  s->scratch = owcfog::config::Hash(s->config);
  return s->scratch.c_str();
}

owc_status owc_lambertian_order(double deg, double* out) {
  if (!out) return OWC_INVALID_ARGUMENT;
  return Guard(nullptr, [&] { *out = owcfog::channel::LambertianOrder(deg); });
}

owc_status owc_sinr_db(double gamma, double* out) {
  if (!out) return OWC_INVALID_ARGUMENT;
  return Guard(nullptr, [&] { *out = owcfog::signal::SinrDb(gamma); });
}

}  // extern "C"
