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

#ifndef MODELFORGE_FORMATS_HPP_
#define MODELFORGE_FORMATS_HPP_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "modelforge/anthropometry.hpp"
#include "modelforge/diagnostics.hpp"
#include "modelforge/dictionary.hpp"
#include "modelforge/model.hpp"

namespace modelforge {

// Parsed environment file. Paths are kept verbatim; the pipeline resolves
// them relative to the environment file's directory.
struct HumanEnv {
  std::string anthropometry_path;
  std::string description_path;
  std::string scaling_algorithm;  // built-in id or path to a custom table
  std::string custom_lengths_path;
  std::string type_meshes = "geometric";  // "geometric" | "detailed"
  bool add_markers = false;
  std::string save_path;
  bool operator==(const HumanEnv&) const = default;
};

struct ObjectEnv {
  int index = 0;  // 1-based numeric suffix
  std::string description_path;
  std::string setup_path;
  std::string mass_properties_path;
  std::string save_path;
  bool operator==(const ObjectEnv&) const = default;
};

struct Environment {
  std::optional<HumanEnv> human;
  std::vector<ObjectEnv> objects;  // ordered by index, 1..n without gaps
  std::string custom_markers_path;
  std::string combined_save_path;
  std::string output_folder = ".";
  std::optional<Vec3> gravity;
  bool operator==(const Environment&) const = default;
};

// All parsers are total: they never throw on malformed text, they record
// located diagnostics and return a best-effort structure. Callers gate on
// diags.has_errors().
Environment parse_environment(const std::string& text, Diagnostics& diags,
                              const std::string& file = {});
ModelDescription parse_description(const std::string& text, Diagnostics& diags,
                                   const std::string& file = {});
AnthropometryProfile parse_anthropometry(const std::string& text, Diagnostics& diags,
                                         const std::string& file = {});
std::map<std::string, double> parse_segment_lengths(const std::string& text, Diagnostics& diags,
                                                    const std::string& file = {});
MarkerSpec parse_marker_file(const std::string& text, Diagnostics& diags,
                             const std::string& file = {});
MassPolicyMap parse_mass_properties(const std::string& text, Diagnostics& diags,
                                    const std::string& file = {});
ObjectSetup parse_object_setup(const std::string& text, Diagnostics& diags,
                               const std::string& file = {});
ScalingTable parse_scaling_table(const std::string& text, Diagnostics& diags,
                                 const std::string& file = {});
Dictionary parse_dictionary_extension(const std::string& text, Diagnostics& diags,
                                      const std::string& file = {});
std::vector<DefaultMarkerRow> parse_default_markerset(const std::string& text, Diagnostics& diags,
                                                      const std::string& file = {});
std::vector<std::string> parse_manifest(const std::string& text, Diagnostics& diags,
                                        const std::string& file = {});

// Canonical serializers; parse(serialize(x)) == x for each format.
std::string serialize_environment(const Environment& env);
std::string serialize_description(const ModelDescription& description);
std::string serialize_anthropometry(const AnthropometryProfile& profile);
std::string serialize_segment_lengths(const std::map<std::string, double>& lengths);
std::string serialize_marker_file(const MarkerSpec& spec);
std::string serialize_mass_properties(const MassPolicyMap& policies);
std::string serialize_object_setup(const ObjectSetup& setup);
std::string serialize_scaling_table(const ScalingTable& table);

}  // namespace modelforge

#endif  // MODELFORGE_FORMATS_HPP_
