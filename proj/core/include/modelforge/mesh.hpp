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

#ifndef MODELFORGE_MESH_HPP_
#define MODELFORGE_MESH_HPP_

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "modelforge/diagnostics.hpp"
#include "modelforge/linalg.hpp"

namespace modelforge {

struct TriMesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> triangles;  // 0-based, counter-clockwise outward
};

struct VolumeProperties {
  double volume = 0;          // m^3
  Vec3 centroid;              // m
  Mat3 unit_density_inertia;  // about the centroid, mesh axes
};

// Wavefront-style subset: v and f records, polygons fan-triangulated,
// normals/textures/materials ignored. Indices are 1-based in the file.
std::optional<TriMesh> load_mesh(std::string_view text, Diagnostics& diags,
                                 const std::string& file = {});

// Signed-tetrahedron accumulation against the origin. Fails with OpenMesh on
// orientation inconsistencies or when |signed volume| is below 1e-12 of the
// bounding-box volume.
std::optional<VolumeProperties> volume_properties(const TriMesh& mesh, Diagnostics& diags);

enum class PrimitiveKind { kCuboid, kCylinder, kSphere };

std::optional<PrimitiveKind> primitive_from_string(std::string_view name);

// Closed, outward-oriented primitives centered at the origin. Cuboid dims are
// full extents; cylinder is (radius, height) about Z with `slices` sides;
// sphere is (radius) as an icosphere with `subdivisions` refinement levels.
std::optional<TriMesh> make_primitive(PrimitiveKind kind, const std::vector<double>& dims,
                                      Diagnostics& diags, int slices = 32, int subdivisions = 3);

struct MassProperties {
  double mass = 0;
  Vec3 com;
  Mat3 inertia;  // about com
};

struct MassPolicy {
  enum class Kind { kMeanDensity, kUserValues };
  Kind kind = Kind::kMeanDensity;
  double density = 0;  // kg/m^3, for kMeanDensity
  MassProperties user;
  bool operator==(const MassPolicy& o) const {
    return kind == o.kind && density == o.density && o.user.mass == user.mass &&
           o.user.com == user.com && o.user.inertia == user.inertia;
  }
};

// Mean-density policies integrate over the mesh scaled per axis; user-value
// policies pass through after an inertia symmetry check.
std::optional<MassProperties> apply_mass_policy(const MassPolicy& policy, const TriMesh* mesh,
                                                const Vec3& scale, Diagnostics& diags);

TriMesh scale_mesh(const TriMesh& mesh, const Vec3& scale);

}  // namespace modelforge

#endif  // MODELFORGE_MESH_HPP_
