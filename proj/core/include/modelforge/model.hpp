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

#ifndef MODELFORGE_MODEL_HPP_
#define MODELFORGE_MODEL_HPP_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "modelforge/dictionary.hpp"
#include "modelforge/linalg.hpp"
#include "modelforge/mesh.hpp"

namespace modelforge {

inline constexpr const char* kRootName = "ROOT";

// One line of a model description file:
//   segment_name, segment_type, joint_code, parent_name[, point_set[, constraint_set]]
struct DescriptionLine {
  std::string segment_name;
  std::string segment_type;
  std::string joint_code;
  std::string parent_name;
  std::string point_set;       // optional
  std::string constraint_set;  // optional
  int line = 0;
  bool operator==(const DescriptionLine& o) const {
    return segment_name == o.segment_name && segment_type == o.segment_type &&
           joint_code == o.joint_code && parent_name == o.parent_name && point_set == o.point_set &&
           constraint_set == o.constraint_set;
  }
};

struct ModelDescription {
  std::vector<DescriptionLine> lines;
  bool operator==(const ModelDescription&) const = default;
};

// Visual attached to a segment: a named unit primitive or a mesh file,
// scaled to `dimensions` and shifted by `center` in the segment frame.
struct MeshRef {
  std::string source;  // "cuboid" | "cylinder" | "sphere" | relative path
  Vec3 dimensions{1, 1, 1};
  Vec3 center{0, 0, 0};
  bool empty() const { return source.empty(); }
};

struct AttachedPoint {
  std::string name;
  Vec3 position;  // m, segment frame
};

// One constraint row resolved against this segment's points.
struct ConstraintMembership {
  std::string set_name;
  std::string subset_name;
  std::string point_name;
  Vec3 normal;
};

struct Marker {
  std::string name;
  Vec3 position;  // m, segment frame
};

struct ModelSegment {
  std::string name;
  std::string segment_type;
  std::string parent_name;  // "ROOT" or a previous segment name
  int parent_id = 0;        // 0 = ROOT, otherwise 1-based segment id
  JointDescriptor joint;
  Vec3 joint_r;                  // translation in parent frame
  Mat3 joint_E = Mat3::identity();  // rotation parent -> segment coordinates
  double mass = 0;
  Vec3 com;
  Mat3 inertia;
  double length = 0;
  MeshRef mesh;
  std::vector<AttachedPoint> points;
  std::vector<ConstraintMembership> constraints;
  std::vector<Marker> markers;

  const AttachedPoint* find_point(std::string_view point_name) const;
};

enum class ModelKind { kHuman, kObject };

struct KinematicModel {
  ModelKind kind = ModelKind::kHuman;
  std::string name;                        // e.g. "human", "object1"
  std::vector<ModelSegment> segments;      // topological order, ids 1..n
  std::vector<LoopConstraintSet> loop_constraints;
  Vec3 gravity{0, 0, -9.81};
  std::vector<std::pair<std::string, std::string>> provenance;  // (input label, sha256)

  int total_dof() const;
  double total_mass() const;
  int marker_count() const;
  const ModelSegment* find_segment(std::string_view segment_name) const;
  ModelSegment* find_segment(std::string_view segment_name);
};

// Custom markerset file entry. Translations are fractions of the segment
// length; rotations are intrinsic X-Y-Z Euler angles in degrees; `distance`
// is the physical marker spacing in meters for cluster types.
struct MarkerEntry {
  enum class Type { kMarker, kCluster, kDoubleCluster };
  std::string segment;
  Type type = Type::kMarker;
  double distance = 0;
  std::vector<std::string> names;  // 1, 3, or 6 names
  Vec3 translation;
  Vec3 rotation_deg;
  int line = 0;
  bool operator==(const MarkerEntry&) const = default;
};

struct MarkerSpec {
  std::vector<MarkerEntry> entries;
  bool operator==(const MarkerSpec&) const = default;
};

int marker_name_count(MarkerEntry::Type type);
std::optional<MarkerEntry::Type> marker_type_from_string(std::string_view name);
std::string to_string(MarkerEntry::Type type);

// Declarative object setup: geometry and optional inline inertial values per
// segment type. Primitive dimensions may use the token "length" to follow the
// resolved segment length.
struct ObjectSetupEntry {
  std::string segment_type;
  std::optional<double> length;
  std::string scale_to;             // human segment name to copy the length from
  std::string mesh_shape;           // "cuboid" | "cylinder" | "sphere" | "file"
  std::vector<std::string> mesh_dims;  // numbers or "length"; for "file": path then scale
  Vec3 mesh_center{0, 0, 0};
  std::optional<MassProperties> inline_mass;
  int line = 0;
  bool operator==(const ObjectSetupEntry& o) const {
    return segment_type == o.segment_type && length == o.length && scale_to == o.scale_to &&
           mesh_shape == o.mesh_shape && mesh_dims == o.mesh_dims && mesh_center == o.mesh_center;
  }
};

struct ObjectSetup {
  std::vector<ObjectSetupEntry> entries;
  const ObjectSetupEntry* find(std::string_view segment_type) const;
  bool operator==(const ObjectSetup&) const = default;
};

// Mass policies keyed by segment name (fallback: segment type).
using MassPolicyMap = std::map<std::string, MassPolicy>;

// Row of the bundled default markerset file.
struct DefaultMarkerRow {
  std::string marker_name;
  std::string segment_type;
  Vec3 fraction;  // of segment length, segment frame
};

}  // namespace modelforge

#endif  // MODELFORGE_MODEL_HPP_
