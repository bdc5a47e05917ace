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

#ifndef MODELFORGE_BUILD_HPP_
#define MODELFORGE_BUILD_HPP_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "modelforge/anthropometry.hpp"
#include "modelforge/dictionary.hpp"
#include "modelforge/model.hpp"

namespace modelforge {

// Builds the human kinematic tree: segments in description order, scaled
// mass/CoM/inertia/length from the defaults, child joints at the parent's
// distal end (parent length along -Z) except for hip/shoulder children which
// sit at the parent origin plus their transverse offset.
std::optional<KinematicModel> build_human_model(const ModelDescription& description,
                                                const Dictionary& dictionary,
                                                const std::vector<SegmentDefaults>& defaults,
                                                const std::map<std::string, Vec3>& joint_offsets,
                                                const AnthropometryProfile& profile,
                                                Diagnostics& diags,
                                                bool geometric_meshes = true);

// Objects take lengths from the setup (literal or scale_to a human segment)
// and inertia from mass policies, inline setup values, or mean density over
// the segment mesh. Mesh files resolve relative to base_dir.
std::optional<KinematicModel> build_object_model(const ModelDescription& description,
                                                 const Dictionary& dictionary,
                                                 const ObjectSetup& setup,
                                                 const MassPolicyMap& mass_policies,
                                                 const KinematicModel* human,
                                                 const std::string& base_dir, Diagnostics& diags);

// Marker, Cluster (3 markers at {0,0,0},{d,0,0},{0,0,d}) and DoubleCluster
// (the cluster plus a copy offset d along rotated local Y). Translations are
// fractions of segment length; rotations intrinsic X-Y-Z Euler degrees.
KinematicModel place_markers(KinematicModel model, const MarkerSpec& spec, Diagnostics& diags);

// Attaches the bundled markerset by segment type; types absent from the
// model are skipped with a warning.
KinematicModel add_default_markerset(KinematicModel model,
                                     const std::vector<DefaultMarkerRow>& rows,
                                     Diagnostics& diags);

struct WorldPose {
  Mat3 rotation = Mat3::identity();
  Vec3 translation;
};

// Zero-pose world transforms per segment name; "ROOT" maps to identity.
std::map<std::string, WorldPose> reference_pose_frames(const KinematicModel& model);

// Which input kinds were supplied when the model was created; drives the
// human/object capability checks.
struct ModelInputsSummary {
  bool anthropometry = false;
  bool scaling_algorithm = false;
  bool custom_lengths = false;
  bool custom_setup = false;
  bool mass_from_mesh = false;
  bool mass_from_user = false;
};

// Capability matrix plus structural invariants. Errors block export.
Diagnostics validate_model(const KinematicModel& model,
                           const ModelInputsSummary& inputs = {});

}  // namespace modelforge

#endif  // MODELFORGE_BUILD_HPP_
