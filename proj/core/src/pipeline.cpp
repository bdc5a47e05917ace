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

#include "modelforge/pipeline.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "modelforge/exporter.hpp"
#include "modelforge/sha256.hpp"

namespace modelforge {
namespace {

namespace fs = std::filesystem;

std::optional<std::string> read_file(const fs::path& path) {
  std::ifstream stream(path, std::ios::binary);
  if (!stream) return std::nullopt;
  std::ostringstream buffer;
  buffer << stream.rdbuf();
  return buffer.str();
}

// Reads an input file, recording its digest in the model provenance list.
std::optional<std::string> read_input(const fs::path& path, const std::string& label,
                                      std::vector<std::pair<std::string, std::string>>& provenance,
                                      Diagnostics& diags) {
  auto text = read_file(path);
  if (!text) {
    diags.error(DiagCode::kUnreadableFile, "cannot read " + label + " file '" + path.string() + "'");
    return std::nullopt;
  }
  provenance.emplace_back(label + " " + path.filename().string(), "sha256:" + sha256_hex(*text));
  return text;
}

fs::path resolve(const fs::path& base, const std::string& path) {
  fs::path p{path};
  return p.is_absolute() ? p : base / p;
}

struct Writer {
  const PipelineOptions& options;
  fs::path output_folder;
  PipelineResult& result;

  void write(const std::string& save_path, const std::string& content,
             const std::string& extension) {
    fs::path target = resolve(output_folder, save_path);
    target.replace_extension(extension);
    if (options.dry_run) return;
    std::error_code ec;
    fs::create_directories(target.parent_path(), ec);
    if (fs::exists(target) && !options.force) {
      result.diagnostics.error(DiagCode::kOverwriteRefused,
                               "'" + target.string() + "' exists; use --force to overwrite");
      return;
    }
    std::ofstream stream(target, std::ios::binary);
    if (!stream) {
      result.diagnostics.error(DiagCode::kUnreadableFile,
                               "cannot write '" + target.string() + "'");
      return;
    }
    stream << content;
    result.written_files.push_back(target.string());
  }
};

// Emits the requested formats for one model under its save path.
void export_model(Writer& writer, const KinematicModel& model, const std::string& save_path,
                  Diagnostics& diags, const PipelineOptions& options) {
  if (save_path.empty()) return;
  if (options.format == OutputFormat::kLua || options.format == OutputFormat::kAll) {
    std::string lua = write_lua_model(model, diags);
    if (!lua.empty()) writer.write(save_path, lua, ".lua");
  }
  if (options.format == OutputFormat::kJson || options.format == OutputFormat::kAll) {
    std::string json = write_json_model(model, diags);
    if (!json.empty()) writer.write(save_path, json, ".json");
  }
  if (options.format == OutputFormat::kAll) {
    std::string scene = write_preview_scene(model, diags);
    if (!scene.empty()) writer.write(save_path, scene, ".obj");
  }
}

}  // namespace

ScalingTable load_scaling_table(const std::string& algorithm_or_path, const std::string& data_dir,
                                const std::string& base_dir, Diagnostics& diags) {
  ScalingTable table;
  auto builtin = scaling_algorithm_from_string(algorithm_or_path);
  fs::path path;
  if (builtin && *builtin != ScalingAlgorithm::kCustom) {
    path = fs::path(data_dir) / "scaling" / (algorithm_or_path + ".csv");
  } else {
    path = resolve(base_dir, algorithm_or_path);
  }
  auto text = read_file(path);
  if (!text) {
    diags.error(DiagCode::kUnreadableFile,
                "cannot read scaling table '" + path.string() + "'");
    return table;
  }
  table = parse_scaling_table(*text, diags, path.string());
  if (builtin) table.algorithm = *builtin;
  return table;
}

std::vector<DefaultMarkerRow> load_default_markerset(const std::string& data_dir,
                                                     Diagnostics& diags) {
  fs::path path = fs::path(data_dir) / "markersets" / "default_markerset.csv";
  auto text = read_file(path);
  if (!text) {
    diags.error(DiagCode::kUnreadableFile,
                "cannot read default markerset '" + path.string() + "'");
    return {};
  }
  return parse_default_markerset(*text, diags, path.string());
}

PipelineResult run_create(const PipelineOptions& options) {
  PipelineResult result;
  Diagnostics& diags = result.diagnostics;

  fs::path env_path{options.env_path};
  fs::path env_dir = env_path.has_parent_path() ? env_path.parent_path() : fs::path(".");

  auto env_text = read_file(env_path);
  if (!env_text) {
    diags.error(DiagCode::kUnreadableFile, "cannot read environment '" + env_path.string() + "'");
    return result;
  }
  result.environment = parse_environment(*env_text, diags, env_path.string());
  if (diags.has_errors()) return result;
  const Environment& env = result.environment;
  const std::pair<std::string, std::string> env_stamp{
      "environment " + env_path.filename().string(), "sha256:" + sha256_hex(*env_text)};

  if (!env.human && env.objects.empty()) {
    diags.warning(DiagCode::kNothingToBuild, "environment defines no human and no objects");
  }

  Dictionary dictionary = builtin_dictionary();
  for (const std::string& dict_file : options.dictionary_files) {
    fs::path path = resolve(env_dir, dict_file);
    auto text = read_file(path);
    if (!text) {
      diags.error(DiagCode::kUnreadableFile,
                  "cannot read dictionary extension '" + path.string() + "'");
      continue;
    }
    Dictionary extension = parse_dictionary_extension(*text, diags, path.string());
    if (!diags.has_errors()) {
      dictionary = merge_custom_dictionary(dictionary, extension, diags);
    }
  }
  if (diags.has_errors()) return result;

  // ------------------------------------------------------------------ human
  ModelInputsSummary human_inputs;
  if (env.human) {
    const HumanEnv& h = *env.human;
    std::vector<std::pair<std::string, std::string>> provenance{env_stamp};

    auto anthro_text =
        read_input(resolve(env_dir, h.anthropometry_path), "anthropometry", provenance, diags);
    auto description_text =
        read_input(resolve(env_dir, h.description_path), "description", provenance, diags);
    if (!anthro_text || !description_text) return result;

    AnthropometryProfile profile =
        parse_anthropometry(*anthro_text, diags, h.anthropometry_path);
    ModelDescription description =
        parse_description(*description_text, diags, h.description_path);

    ScalingTable table =
        load_scaling_table(h.scaling_algorithm, options.data_dir, env_dir.string(), diags);
    if (!scaling_algorithm_from_string(h.scaling_algorithm)) {
      provenance.emplace_back("scaling_table " + fs::path(h.scaling_algorithm).filename().string(),
                              "custom");
    } else {
      provenance.emplace_back("scaling_algorithm " + h.scaling_algorithm, "builtin");
    }

    std::map<std::string, double> raw_lengths;
    if (!h.custom_lengths_path.empty()) {
      auto lengths_text =
          read_input(resolve(env_dir, h.custom_lengths_path), "segment_lengths", provenance, diags);
      if (lengths_text) {
        raw_lengths = parse_segment_lengths(*lengths_text, diags, h.custom_lengths_path);
      }
    }
    if (diags.has_errors()) return result;

    // lengths files may key by segment name (as in measurement protocols) or
    // directly by segment type
    std::map<std::string, double> lengths_by_type;
    for (const auto& [key, value] : raw_lengths) {
      std::string type = key;
      for (const auto& line : description.lines) {
        if (line.segment_name == key) {
          type = line.segment_type;
          break;
        }
      }
      lengths_by_type[type] = value;
    }

    std::vector<SegmentDefaults> defaults;
    if (table.is_child_table()) {
      // lengths are measured per description segment; drop table rows the
      // description never references before demanding lengths for them
      std::map<std::string, ScalingTable::ChildRow> used;
      for (const auto& line : description.lines) {
        auto it = table.child.find(line.segment_type);
        if (it != table.child.end()) used[it->first] = it->second;
      }
      table.child = std::move(used);
      defaults = scale_segments_child(table, profile, lengths_by_type, diags);
    } else {
      defaults = scale_segments_regression(table, profile, diags);
      if (!lengths_by_type.empty() && profile.weight) {
        defaults = apply_custom_lengths(defaults, lengths_by_type, *profile.weight, diags);
      }
    }

    std::set<std::string> types;
    for (const auto& line : description.lines) types.insert(line.segment_type);
    auto offsets = compute_joint_offsets(profile, types, diags);
    if (diags.has_errors()) return result;

    if (h.type_meshes == "detailed") {
      diags.warning(DiagCode::kInvalidValue,
                    "detailed meshes are not bundled; using geometric shapes");
    }
    auto human = build_human_model(description, dictionary, defaults, offsets, profile, diags,
                                   /*geometric_meshes=*/true);
    if (!human) return result;

    human_inputs.anthropometry = true;
    human_inputs.scaling_algorithm = true;
    human_inputs.custom_lengths = !h.custom_lengths_path.empty();

    if (h.add_markers) {
      auto rows = load_default_markerset(options.data_dir, diags);
      if (!diags.has_errors()) {
        *human = add_default_markerset(std::move(*human), rows, diags);
      }
    }
    human->provenance = std::move(provenance);
    result.human = std::move(*human);
  }

  // ---------------------------------------------------------------- objects
  std::vector<ModelInputsSummary> object_inputs;
  for (const ObjectEnv& slot : env.objects) {
    std::vector<std::pair<std::string, std::string>> provenance{env_stamp};
    auto description_text =
        read_input(resolve(env_dir, slot.description_path), "description", provenance, diags);
    auto setup_text = read_input(resolve(env_dir, slot.setup_path), "setup", provenance, diags);
    if (!description_text || !setup_text) return result;

    ModelDescription description =
        parse_description(*description_text, diags, slot.description_path);
    ObjectSetup setup = parse_object_setup(*setup_text, diags, slot.setup_path);

    MassPolicyMap policies;
    if (!slot.mass_properties_path.empty()) {
      auto mass_text = read_input(resolve(env_dir, slot.mass_properties_path), "mass_properties",
                                  provenance, diags);
      if (mass_text) {
        policies = parse_mass_properties(*mass_text, diags, slot.mass_properties_path);
      }
    }
    if (diags.has_errors()) return result;

    auto object = build_object_model(description, dictionary, setup, policies,
                                     result.human ? &*result.human : nullptr, env_dir.string(),
                                     diags);
    if (!object) return result;
    object->name = "object" + std::to_string(slot.index);
    object->provenance = std::move(provenance);

    ModelInputsSummary inputs;
    inputs.custom_setup = true;
    for (const auto& [segment, policy] : policies) {
      (void)segment;
      if (policy.kind == MassPolicy::Kind::kMeanDensity) inputs.mass_from_mesh = true;
      if (policy.kind == MassPolicy::Kind::kUserValues) inputs.mass_from_user = true;
    }
    object_inputs.push_back(inputs);
    result.objects.push_back(std::move(*object));
  }

  // gravity override applies to every model in the environment
  if (env.gravity) {
    if (result.human) result.human->gravity = *env.gravity;
    for (auto& object : result.objects) object.gravity = *env.gravity;
  }

  // --------------------------------------------------------- custom markers
  if (!env.custom_markers_path.empty()) {
    fs::path path = resolve(env_dir, env.custom_markers_path);
    auto text = read_file(path);
    if (!text) {
      diags.error(DiagCode::kUnreadableFile, "cannot read marker file '" + path.string() + "'");
      return result;
    }
    MarkerSpec spec = parse_marker_file(*text, diags, env.custom_markers_path);
    if (diags.has_errors()) return result;

    auto route = [&](KinematicModel& model) {
      MarkerSpec subset;
      for (const auto& entry : spec.entries) {
        if (model.find_segment(entry.segment) != nullptr) subset.entries.push_back(entry);
      }
      if (!subset.entries.empty()) model = place_markers(std::move(model), subset, diags);
    };
    std::set<std::string> known;
    if (result.human) {
      for (const auto& s : result.human->segments) known.insert(s.name);
    }
    for (const auto& object : result.objects) {
      for (const auto& s : object.segments) known.insert(s.name);
    }
    for (const auto& entry : spec.entries) {
      if (!known.count(entry.segment)) {
        diags.error(DiagCode::kUnknownSegment,
                    "marker entry references unknown segment '" + entry.segment + "'",
                    env.custom_markers_path, entry.line);
      }
    }
    if (result.human) route(*result.human);
    for (auto& object : result.objects) route(object);
  }
  if (diags.has_errors()) return result;

  // ---------------------------------------------------------------- validate
  if (result.human) {
    diags.append(validate_model(*result.human, human_inputs));
  }
  for (std::size_t i = 0; i < result.objects.size(); ++i) {
    diags.append(validate_model(result.objects[i], object_inputs[i]));
  }
  if (diags.has_errors()) return result;

  // ------------------------------------------------------------------ export
  Writer writer{options, resolve(env_dir, env.output_folder), result};
  if (result.human && env.human) {
    export_model(writer, *result.human, env.human->save_path, diags, options);
  }
  for (std::size_t i = 0; i < result.objects.size(); ++i) {
    export_model(writer, result.objects[i], env.objects[i].save_path, diags, options);
  }

  if (!env.combined_save_path.empty()) {
    // dictionary loop sets that span models resolve only in the combined file
    std::vector<LoopConstraintSet> extra_loops;
    std::set<std::string> attached;
    if (result.human) {
      for (const auto& loop : result.human->loop_constraints) attached.insert(loop.name);
    }
    for (const auto& object : result.objects) {
      for (const auto& loop : object.loop_constraints) attached.insert(loop.name);
    }
    for (const auto& [name, set] : dictionary.loop_sets) {
      if (!attached.count(name)) extra_loops.push_back(set);
    }

    std::vector<const KinematicModel*> objects;
    for (const auto& object : result.objects) objects.push_back(&object);
    std::string lua = write_combined(result.human ? &*result.human : nullptr, objects, extra_loops,
                                     diags);
    if (!lua.empty()) writer.write(env.combined_save_path, lua, ".lua");
  }

  return result;
}

}  // namespace modelforge
