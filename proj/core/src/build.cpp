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

#include "modelforge/build.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "modelforge/numbers.hpp"

namespace modelforge {
namespace {

struct ParentInfo {
  int id = 0;        // 0 = ROOT
  double length = 0;
  const std::string* type = nullptr;
};

// Resolves parent linkage in file order; parents must precede children.
bool resolve_parent(const DescriptionLine& line, const std::map<std::string, int>& built_ids,
                    const std::set<std::string>& all_names, const std::string& file,
                    Diagnostics& diags, int& parent_id) {
  if (line.parent_name == kRootName) {
    parent_id = 0;
    return true;
  }
  if (line.parent_name == line.segment_name) {
    diags.error(DiagCode::kCycleDetected,
                "segment '" + line.segment_name + "' is its own parent", file, line.line);
    return false;
  }
  auto it = built_ids.find(line.parent_name);
  if (it != built_ids.end()) {
    parent_id = it->second;
    return true;
  }
  if (all_names.count(line.parent_name)) {
    diags.error(DiagCode::kCycleDetected,
                "parent '" + line.parent_name + "' of '" + line.segment_name +
                    "' appears later in the file; parents must precede children",
                file, line.line);
  } else {
    diags.error(DiagCode::kDanglingParent,
                "parent '" + line.parent_name + "' of '" + line.segment_name + "' is not defined",
                file, line.line);
  }
  return false;
}

bool resolve_joint(const DescriptionLine& line, const Dictionary& dictionary,
                   const std::string& file, Diagnostics& diags, JointDescriptor& joint) {
  if (const JointDescriptor* named = dictionary.find_joint(line.joint_code)) {
    joint = *named;
    return true;
  }
  auto parsed = parse_joint_code(line.joint_code, diags, file, line.line);
  if (!parsed) return false;
  joint = std::move(*parsed);
  return true;
}

// Attaches a dictionary point set scaled by the segment length, applying
// anthropometric overrides where available.
bool attach_points(ModelSegment& segment, const DescriptionLine& line,
                   const Dictionary& dictionary, const std::map<std::string, Vec3>& overrides,
                   const std::string& file, Diagnostics& diags) {
  if (line.point_set.empty()) return true;
  const PointSet* set = dictionary.find_point_set(line.point_set);
  if (set == nullptr) {
    diags.error(DiagCode::kUnknownDictionaryName,
                "point set '" + line.point_set + "' is not in the dictionary", file, line.line);
    return false;
  }
  for (const auto& entry : set->entries) {
    auto it = overrides.find(entry.name);
    Vec3 position = it != overrides.end() ? it->second : entry.coords * segment.length;
    segment.points.push_back({entry.name, position});
  }
  return true;
}

bool attach_constraints(ModelSegment& segment, const DescriptionLine& line,
                        const Dictionary& dictionary, const std::string& file,
                        Diagnostics& diags) {
  if (line.constraint_set.empty()) return true;
  const ConstraintSet* set = dictionary.find_constraint_set(line.constraint_set);
  if (set == nullptr) {
    diags.error(DiagCode::kUnknownDictionaryName,
                "constraint set '" + line.constraint_set + "' is not in the dictionary", file,
                line.line);
    return false;
  }
  bool ok = true;
  for (const auto& subset : set->subsets) {
    for (const auto& row : subset.rows) {
      if (segment.find_point(row.point_name) == nullptr) {
        diags.error(DiagCode::kUnknownDictionaryName,
                    "constraint '" + subset.name + "' references point '" + row.point_name +
                        "' which is not attached to segment '" + segment.name + "'",
                    file, line.line);
        ok = false;
        continue;
      }
      segment.constraints.push_back({set->name, subset.name, row.point_name, row.normal});
    }
  }
  return ok;
}

// Dictionary loop sets whose bodies all resolve inside this model.
void attach_loops(KinematicModel& model, const Dictionary& dictionary) {
  for (const auto& [name, set] : dictionary.loop_sets) {
    (void)name;
    bool resolvable = !set.rows.empty();
    for (const auto& row : set.rows) {
      resolvable = resolvable && model.find_segment(row.predecessor_body) != nullptr &&
                   model.find_segment(row.successor_body) != nullptr;
    }
    if (resolvable) model.loop_constraints.push_back(set);
  }
}

bool type_contains(const std::string& type, const char* stem) {
  return type.find(stem) != std::string::npos;
}

MeshRef geometric_visual(const std::string& segment_type, double length) {
  MeshRef mesh;
  if (length <= 0) return mesh;
  if (type_contains(segment_type, "Head")) {
    mesh.source = "sphere";
    mesh.dimensions = {0.8 * length, 0.8 * length, length};
    mesh.center = {0, 0, -length / 2};
  } else if (type_contains(segment_type, "Foot")) {
    mesh.source = "cuboid";
    mesh.dimensions = {length, 0.35 * length, 0.25 * length};
    mesh.center = {0.25 * length, 0, -0.125 * length};
  } else if (type_contains(segment_type, "Pelvis") || type_contains(segment_type, "Trunk")) {
    mesh.source = "cuboid";
    mesh.dimensions = {0.6 * length, 0.9 * length, length};
    mesh.center = {0, 0, -length / 2};
  } else {
    mesh.source = "cylinder";
    mesh.dimensions = {0.25 * length, 0.25 * length, length};
    mesh.center = {0, 0, -length / 2};
  }
  return mesh;
}

std::optional<std::string> read_file(const std::filesystem::path& path) {
  std::ifstream stream(path, std::ios::binary);
  if (!stream) return std::nullopt;
  std::ostringstream buffer;
  buffer << stream.rdbuf();
  return buffer.str();
}

}  // namespace

std::optional<KinematicModel> build_human_model(const ModelDescription& description,
                                                const Dictionary& dictionary,
                                                const std::vector<SegmentDefaults>& defaults,
                                                const std::map<std::string, Vec3>& joint_offsets,
                                                const AnthropometryProfile& profile,
                                                Diagnostics& diags, bool geometric_meshes) {
  KinematicModel model;
  model.kind = ModelKind::kHuman;
  model.name = "human";

  std::map<std::string, const SegmentDefaults*> by_type;
  for (const auto& d : defaults) by_type[d.segment_type] = &d;

  std::set<std::string> all_names;
  for (const auto& line : description.lines) all_names.insert(line.segment_name);

  std::map<std::string, Vec3> overrides = foot_point_overrides(profile);
  std::map<std::string, int> built_ids;
  bool ok = true;

  for (const auto& line : description.lines) {
    if (built_ids.count(line.segment_name)) {
      diags.error(DiagCode::kDuplicateSegmentName,
                  "segment '" + line.segment_name + "' is defined twice", "", line.line);
      ok = false;
      continue;
    }

    ModelSegment segment;
    segment.name = line.segment_name;
    segment.segment_type = line.segment_type;
    segment.parent_name = line.parent_name;

    auto defaults_it = by_type.find(line.segment_type);
    if (defaults_it == by_type.end()) {
      diags.error(DiagCode::kUnknownSegmentType,
                  "segment type '" + line.segment_type + "' is not in the scaling table", "",
                  line.line);
      ok = false;
      continue;
    }
    const SegmentDefaults& d = *defaults_it->second;
    segment.length = d.length;
    segment.mass = d.mass;
    segment.com = d.com;
    segment.inertia = d.inertia;

    if (!resolve_parent(line, built_ids, all_names, "", diags, segment.parent_id) ||
        !resolve_joint(line, dictionary, "", diags, segment.joint)) {
      ok = false;
      continue;
    }

    if (segment.parent_id == 0) {
      segment.joint_r = {0, 0, 0};
    } else if (auto offset = joint_offsets.find(line.segment_type); offset != joint_offsets.end()) {
      segment.joint_r = offset->second;  // measured transverse joint center
    } else {
      const ModelSegment& parent = model.segments[segment.parent_id - 1];
      segment.joint_r = {0, 0, -parent.length};
    }

    if (!attach_points(segment, line, dictionary, overrides, "", diags)) ok = false;
    if (!attach_constraints(segment, line, dictionary, "", diags)) ok = false;
    if (geometric_meshes) segment.mesh = geometric_visual(line.segment_type, segment.length);

    model.segments.push_back(std::move(segment));
    built_ids[line.segment_name] = static_cast<int>(model.segments.size());
  }

  if (!ok) return std::nullopt;
  attach_loops(model, dictionary);
  return model;
}

std::optional<KinematicModel> build_object_model(const ModelDescription& description,
                                                 const Dictionary& dictionary,
                                                 const ObjectSetup& setup,
                                                 const MassPolicyMap& mass_policies,
                                                 const KinematicModel* human,
                                                 const std::string& base_dir, Diagnostics& diags) {
  KinematicModel model;
  model.kind = ModelKind::kObject;
  model.name = "object";

  std::set<std::string> all_names;
  for (const auto& line : description.lines) all_names.insert(line.segment_name);

  std::map<std::string, int> built_ids;
  bool ok = true;

  for (const auto& line : description.lines) {
    if (built_ids.count(line.segment_name)) {
      diags.error(DiagCode::kDuplicateSegmentName,
                  "segment '" + line.segment_name + "' is defined twice", "", line.line);
      ok = false;
      continue;
    }

    ModelSegment segment;
    segment.name = line.segment_name;
    segment.segment_type = line.segment_type;
    segment.parent_name = line.parent_name;

    const ObjectSetupEntry* entry = setup.find(line.segment_type);
    if (entry == nullptr) {
      diags.error(DiagCode::kUnknownSegmentType,
                  "segment type '" + line.segment_type + "' is not in the object setup", "",
                  line.line);
      ok = false;
      continue;
    }

    // length: literal, or copied from the matched human segment
    if (!entry->scale_to.empty()) {
      if (human == nullptr) {
        diags.error(DiagCode::kMissingHumanContext,
                    "'" + line.segment_type + "' declares scale_to but no human model exists", "",
                    line.line);
        ok = false;
        continue;
      }
      const ModelSegment* matched = human->find_segment(entry->scale_to);
      if (matched == nullptr) {
        diags.error(DiagCode::kUnknownSegment,
                    "scale_to references unknown human segment '" + entry->scale_to + "'", "",
                    line.line);
        ok = false;
        continue;
      }
      segment.length = matched->length;
    } else if (entry->length) {
      segment.length = *entry->length;
    }

    if (!resolve_parent(line, built_ids, all_names, "", diags, segment.parent_id) ||
        !resolve_joint(line, dictionary, "", diags, segment.joint)) {
      ok = false;
      continue;
    }
    if (segment.parent_id == 0) {
      segment.joint_r = {0, 0, 0};
    } else {
      const ModelSegment& parent = model.segments[segment.parent_id - 1];
      segment.joint_r = {0, 0, -parent.length};
    }

    // mesh: primitive with dims (numbers or "length"), or a mesh file
    std::optional<TriMesh> mesh;
    if (!entry->mesh_shape.empty()) {
      if (entry->mesh_shape == "file") {
        if (entry->mesh_dims.empty()) {
          diags.error(DiagCode::kUnknownMeshRef, "mesh file entry is missing a path", "",
                      line.line);
          ok = false;
        } else {
          std::filesystem::path path = std::filesystem::path(base_dir) / entry->mesh_dims[0];
          auto text = read_file(path);
          if (!text) {
            diags.error(DiagCode::kUnknownMeshRef, "cannot read mesh file '" + path.string() + "'",
                        "", line.line);
            ok = false;
          } else {
            mesh = load_mesh(*text, diags, path.string());
            if (!mesh) ok = false;
          }
          Vec3 scale{1, 1, 1};
          if (entry->mesh_dims.size() == 4) {
            bool numeric = true;
            for (int i = 0; i < 3; ++i) {
              auto v = parse_strict_double(entry->mesh_dims[1 + i]);
              if (!v) {
                numeric = false;
                break;
              }
              scale[i] = *v;
            }
            if (!numeric) {
              diags.error(DiagCode::kNonNumericValue, "mesh file scale must be numeric", "",
                          line.line);
              ok = false;
            }
          }
          if (mesh) *mesh = scale_mesh(*mesh, scale);
          segment.mesh.source = entry->mesh_dims[0];
          segment.mesh.dimensions = scale;
          segment.mesh.center = entry->mesh_center;
        }
      } else {
        std::vector<double> dims;
        bool numeric = true;
        for (const auto& token : entry->mesh_dims) {
          if (token == "length") {
            dims.push_back(segment.length);
          } else if (auto v = parse_strict_double(token)) {
            dims.push_back(*v);
          } else {
            diags.error(DiagCode::kNonNumericValue,
                        "mesh dimension '" + token + "' is not a number or 'length'", "",
                        line.line);
            numeric = false;
            break;
          }
        }
        if (numeric) {
          auto kind = primitive_from_string(entry->mesh_shape);
          mesh = make_primitive(*kind, dims, diags);
          if (mesh) {
            segment.mesh.source = entry->mesh_shape;
            if (*kind == PrimitiveKind::kCuboid) {
              segment.mesh.dimensions = {dims[0], dims[1], dims[2]};
            } else if (*kind == PrimitiveKind::kCylinder) {
              segment.mesh.dimensions = {2 * dims[0], 2 * dims[0], dims[1]};
            } else {
              segment.mesh.dimensions = {2 * dims[0], 2 * dims[0], 2 * dims[0]};
            }
            segment.mesh.center = entry->mesh_center;
            for (Vec3& v : mesh->vertices) v += entry->mesh_center;
          } else {
            ok = false;
          }
        } else {
          ok = false;
        }
      }
    }

    // inertial data: mass-properties file entry (by name, then type),
    // then inline setup values, else zero mass
    const MassPolicy* policy = nullptr;
    if (auto it = mass_policies.find(line.segment_name); it != mass_policies.end()) {
      policy = &it->second;
    } else if (auto it2 = mass_policies.find(line.segment_type); it2 != mass_policies.end()) {
      policy = &it2->second;
    }
    if (policy != nullptr) {
      auto mass = apply_mass_policy(*policy, mesh ? &*mesh : nullptr, {1, 1, 1}, diags);
      if (!mass) {
        ok = false;
      } else {
        segment.mass = mass->mass;
        segment.com = mass->com;
        segment.inertia = mass->inertia;
      }
    } else if (entry->inline_mass) {
      MassPolicy inline_policy;
      inline_policy.kind = MassPolicy::Kind::kUserValues;
      inline_policy.user = *entry->inline_mass;
      auto mass = apply_mass_policy(inline_policy, nullptr, {1, 1, 1}, diags);
      if (!mass) {
        ok = false;
      } else {
        segment.mass = mass->mass;
        segment.com = mass->com;
        segment.inertia = mass->inertia;
      }
    } else {
      diags.warning(DiagCode::kUnknownMassPolicy,
                    "segment '" + line.segment_name + "' has no mass source; mass set to zero", "",
                    line.line);
    }

    std::map<std::string, Vec3> no_overrides;
    if (!attach_points(segment, line, dictionary, no_overrides, "", diags)) ok = false;
    if (!attach_constraints(segment, line, dictionary, "", diags)) ok = false;

    model.segments.push_back(std::move(segment));
    built_ids[line.segment_name] = static_cast<int>(model.segments.size());
  }

  if (!ok) return std::nullopt;
  attach_loops(model, dictionary);
  return model;
}

KinematicModel place_markers(KinematicModel model, const MarkerSpec& spec, Diagnostics& diags) {
  std::set<std::string> existing;
  for (const auto& s : model.segments) {
    for (const auto& m : s.markers) existing.insert(m.name);
  }

  for (const MarkerEntry& entry : spec.entries) {
    ModelSegment* segment = model.find_segment(entry.segment);
    if (segment == nullptr) {
      diags.error(DiagCode::kUnknownSegment,
                  "marker entry references unknown segment '" + entry.segment + "'", "",
                  entry.line);
      continue;
    }
    Mat3 rotation = euler_xyz_deg(entry.rotation_deg);
    Vec3 translation = entry.translation * segment->length;

    std::vector<Vec3> layout;
    switch (entry.type) {
      case MarkerEntry::Type::kMarker:
        layout = {{0, 0, 0}};
        break;
      case MarkerEntry::Type::kCluster:
        layout = {{0, 0, 0}, {entry.distance, 0, 0}, {0, 0, entry.distance}};
        break;
      case MarkerEntry::Type::kDoubleCluster:
        layout = {{0, 0, 0},
                  {entry.distance, 0, 0},
                  {0, 0, entry.distance},
                  {0, entry.distance, 0},
                  {entry.distance, entry.distance, 0},
                  {0, entry.distance, entry.distance}};
        break;
    }
    for (std::size_t i = 0; i < layout.size(); ++i) {
      const std::string& name = entry.names[i];
      if (!existing.insert(name).second) {
        diags.error(DiagCode::kDuplicateMarkerName, "marker '" + name + "' already exists", "",
                    entry.line);
        continue;
      }
      segment->markers.push_back({name, rotation * layout[i] + translation});
    }
  }
  return model;
}

KinematicModel add_default_markerset(KinematicModel model,
                                     const std::vector<DefaultMarkerRow>& rows,
                                     Diagnostics& diags) {
  if (model.kind != ModelKind::kHuman) {
    diags.error(DiagCode::kCapabilityViolation,
                "default markerset attaches to human models only");
    return model;
  }
  std::set<std::string> existing;
  for (const auto& s : model.segments) {
    for (const auto& m : s.markers) existing.insert(m.name);
  }
  for (const DefaultMarkerRow& row : rows) {
    ModelSegment* target = nullptr;
    for (auto& s : model.segments) {
      if (s.segment_type == row.segment_type) {
        target = &s;
        break;
      }
    }
    if (target == nullptr) {
      diags.warning(DiagCode::kUnknownSegment,
                    "default marker '" + row.marker_name + "' skipped: no segment of type '" +
                        row.segment_type + "'");
      continue;
    }
    if (!existing.insert(row.marker_name).second) {
      diags.error(DiagCode::kDuplicateMarkerName,
                  "marker '" + row.marker_name + "' already exists");
      continue;
    }
    target->markers.push_back({row.marker_name, row.fraction * target->length});
  }
  return model;
}

std::map<std::string, WorldPose> reference_pose_frames(const KinematicModel& model) {
  std::map<std::string, WorldPose> poses;
  poses[kRootName] = WorldPose{};
  std::vector<WorldPose> by_id(model.segments.size() + 1);
  for (std::size_t i = 0; i < model.segments.size(); ++i) {
    const ModelSegment& s = model.segments[i];
    const WorldPose& parent = by_id[s.parent_id];
    WorldPose pose;
    pose.rotation = parent.rotation * s.joint_E.transpose();
    pose.translation = parent.translation + parent.rotation * s.joint_r;
    by_id[i + 1] = pose;
    poses[s.name] = pose;
  }
  return poses;
}

Diagnostics validate_model(const KinematicModel& model, const ModelInputsSummary& inputs) {
  Diagnostics diags;
  const bool human = model.kind == ModelKind::kHuman;

  auto capability = [&](bool supplied, bool allowed, const char* functionality) {
    if (supplied && !allowed) {
      diags.error(DiagCode::kCapabilityViolation,
                  std::string("'") + functionality + "' is not available for " +
                      (human ? "human" : "object") + " models");
    }
  };
  capability(inputs.anthropometry, human, "Anthropometry");
  capability(inputs.scaling_algorithm, human, "Scaling algorithms");
  capability(inputs.custom_lengths, human, "Custom scaling");
  capability(inputs.custom_setup, !human, "Custom setups");
  capability(inputs.mass_from_mesh, !human, "Segment mass from mesh");
  capability(inputs.mass_from_user, !human, "Segment mass from user");

  std::set<std::string> names;
  std::set<std::string> marker_names;
  std::set<std::string> global_point_names;  // exported points are global
  for (std::size_t i = 0; i < model.segments.size(); ++i) {
    const ModelSegment& s = model.segments[i];
    int id = static_cast<int>(i) + 1;
    if (!names.insert(s.name).second) {
      diags.error(DiagCode::kDuplicateSegmentName, "duplicate segment name '" + s.name + "'");
    }
    if (s.parent_id < 0 || s.parent_id >= id) {
      diags.error(DiagCode::kInvalidModel,
                  "segment '" + s.name + "' breaks topological order (parent_id " +
                      std::to_string(s.parent_id) + " >= id " + std::to_string(id) + ")");
    }
    if (s.mass < 0) {
      diags.error(DiagCode::kInvalidModel, "segment '" + s.name + "' has negative mass");
    }
    Mat3 skew = s.inertia - s.inertia.transpose();
    if (skew.max_abs() > 1e-9 * std::max(1.0, s.inertia.max_abs())) {
      diags.error(DiagCode::kInvalidModel, "segment '" + s.name + "' has asymmetric inertia");
    }
    // positive semidefinite via principal minors, with a floating point slack
    double tol = 1e-12 * std::max(1.0, s.inertia.max_abs());
    double d1 = s.inertia(0, 0);
    double d2 = s.inertia(0, 0) * s.inertia(1, 1) - s.inertia(0, 1) * s.inertia(1, 0);
    double d3 = s.inertia(0, 0) * (s.inertia(1, 1) * s.inertia(2, 2) - s.inertia(1, 2) * s.inertia(2, 1)) -
                s.inertia(0, 1) * (s.inertia(1, 0) * s.inertia(2, 2) - s.inertia(1, 2) * s.inertia(2, 0)) +
                s.inertia(0, 2) * (s.inertia(1, 0) * s.inertia(2, 1) - s.inertia(1, 1) * s.inertia(2, 0));
    if (d1 < -tol || d2 < -tol || d3 < -tol) {
      diags.error(DiagCode::kInvalidModel,
                  "segment '" + s.name + "' inertia is not positive semidefinite");
    }

    for (const auto& row : s.joint.rows) {
      int ones = 0;
      bool binary = true;
      for (double v : row) {
        if (v == 1.0) {
          ++ones;
        } else if (v != 0.0) {
          binary = false;
        }
      }
      if (!binary || ones != 1) {
        diags.error(DiagCode::kInvalidModel,
                    "segment '" + s.name + "' has a non one-hot joint row");
      }
    }

    for (const auto& p : s.points) {
      if (!global_point_names.insert(p.name).second) {
        diags.error(DiagCode::kInvalidModel,
                    "point name '" + p.name + "' is attached more than once in the model");
      }
    }
    for (const auto& c : s.constraints) {
      if (s.find_point(c.point_name) == nullptr) {
        diags.error(DiagCode::kInvalidModel,
                    "constraint row references missing point '" + c.point_name + "' on '" +
                        s.name + "'");
      }
      if (std::fabs(c.normal.norm() - 1.0) > 1e-9) {
        diags.error(DiagCode::kNonUnitNormal,
                    "constraint normal on '" + s.name + "' is not unit length");
      }
    }
    for (const auto& m : s.markers) {
      if (!marker_names.insert(m.name).second) {
        diags.error(DiagCode::kDuplicateMarkerName, "duplicate marker name '" + m.name + "'");
      }
    }
  }

  for (const auto& loop : model.loop_constraints) {
    for (const auto& row : loop.rows) {
      const ModelSegment* pred = model.find_segment(row.predecessor_body);
      const ModelSegment* succ = model.find_segment(row.successor_body);
      if (pred == nullptr || succ == nullptr) {
        diags.error(DiagCode::kUnknownSegment,
                    "loop constraint '" + loop.name + "' references a missing body");
        continue;
      }
      if (row.predecessor_body == row.successor_body) {
        diags.error(DiagCode::kInvalidModel,
                    "loop constraint '" + loop.name + "' must join two distinct bodies");
      }
      if (pred->find_point(row.predecessor_point) == nullptr ||
          succ->find_point(row.successor_point) == nullptr) {
        diags.error(DiagCode::kInvalidModel,
                    "loop constraint '" + loop.name + "' references a missing point");
      }
    }
  }
  return diags;
}

}  // namespace modelforge
