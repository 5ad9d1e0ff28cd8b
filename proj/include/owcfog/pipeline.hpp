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

// Stage runners writing result bundles: CSV tables plus a manifest naming the
// configuration hash, seed, RNG and a SHA-256 per file.

#ifndef OWCFOG_PIPELINE_HPP_
#define OWCFOG_PIPELINE_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace owcfog::pipeline {

using nlohmann::json;

inline constexpr const char* kVersion = "0.3.0";

// Column subsets of the placement tables.
inline constexpr std::string_view kFigures[] = {"7a", "7b", "7c", "8", "9", "10", "11"};
bool IsFigure(std::string_view fig);

struct RunOptions {
  std::string out_dir = "out";
  std::string fig;  // empty for none
};

struct StageResult {
  std::string stage;
  std::vector<std::string> files;
  json summary;
};

StageResult RunChannel(const json& cfg, const RunOptions& opts);
StageResult RunAllocate(const json& cfg, const RunOptions& opts);
StageResult RunPlace(const json& cfg, const RunOptions& opts);
StageResult RunSweep(const json& cfg, const RunOptions& opts);
StageResult RunChain(const json& cfg, const RunOptions& opts);
StageResult RunValidate(const json& cfg, const RunOptions& opts);

// Dispatches on the stage name. An InfeasibleError leaves
// <out>/infeasible.json describing the binding constraint before it
// propagates.
StageResult Run(std::string_view stage, const json& cfg, const RunOptions& opts);

}  // namespace owcfog::pipeline

#endif  // OWCFOG_PIPELINE_HPP_
