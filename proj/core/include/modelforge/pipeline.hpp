// Copyright 2026 The ModelForge Authors
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

#ifndef MODELFORGE_PIPELINE_HPP_
#define MODELFORGE_PIPELINE_HPP_

#include <optional>
#include <string>
#include <vector>

#include "modelforge/build.hpp"
#include "modelforge/formats.hpp"
#include "modelforge/model.hpp"

namespace modelforge {

enum class OutputFormat { kLua, kJson, kAll };

struct PipelineOptions {
  std::string env_path;
  std::string data_dir;  // bundled scaling tables and markerset
  std::vector<std::string> dictionary_files;  // extension files, merged in order
  bool dry_run = false;
  bool force = false;
  OutputFormat format = OutputFormat::kLua;
};

struct PipelineResult {
  Environment environment;
  std::optional<KinematicModel> human;
  std::vector<KinematicModel> objects;
  std::vector<std::string> written_files;
  Diagnostics diagnostics;

  bool ok() const { return !diagnostics.has_errors(); }
};

// Full create pipeline: parse -> scale -> build -> validate -> export.
// The human model is built first, then objects in index order. With dry_run
// the pipeline stops after validation and writes nothing.
PipelineResult run_create(const PipelineOptions& options);

// Loads a bundled table by algorithm id, or any table from an explicit path.
ScalingTable load_scaling_table(const std::string& algorithm_or_path, const std::string& data_dir,
                                const std::string& base_dir, Diagnostics& diags);

std::vector<DefaultMarkerRow> load_default_markerset(const std::string& data_dir,
                                                     Diagnostics& diags);

}  // namespace modelforge

#endif  // MODELFORGE_PIPELINE_HPP_
