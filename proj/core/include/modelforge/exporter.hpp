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

#ifndef MODELFORGE_EXPORTER_HPP_
#define MODELFORGE_EXPORTER_HPP_

#include <string>
#include <vector>

#include "modelforge/build.hpp"
#include "modelforge/model.hpp"

namespace modelforge {

// Deterministic Lua model file: fixed key order, shortest round-trip number
// formatting, byte-identical across runs for identical inputs. Fails with
// ValidationFailed when the model has structural errors.
std::string write_lua_model(const KinematicModel& model, Diagnostics& diags);

// Single Lua file with the human frames first, then objects in index order.
// Object frame names colliding with existing frames are renamed
// "Object<k>_<name>" with a warning. extra_loops carries loop constraint
// sets that span models; their rows must reference final frame names.
std::string write_combined(const KinematicModel* human,
                           const std::vector<const KinematicModel*>& objects,
                           const std::vector<LoopConstraintSet>& extra_loops, Diagnostics& diags);

// One-to-one JSON mirror of the Lua structure.
std::string write_json_model(const KinematicModel& model, Diagnostics& diags);

// Merged Wavefront-style scene of all segment visuals posed at the zero
// reference pose, with marker/point world positions as comment annotations.
std::string write_preview_scene(const KinematicModel& model, Diagnostics& diags);

}  // namespace modelforge

#endif  // MODELFORGE_EXPORTER_HPP_
