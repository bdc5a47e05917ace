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

#ifndef MODELFORGE_ANTHROPOMETRY_HPP_
#define MODELFORGE_ANTHROPOMETRY_HPP_

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "modelforge/diagnostics.hpp"
#include "modelforge/linalg.hpp"

namespace modelforge {

enum class Gender { kMale, kFemale };

struct AnthropometryProfile {
  std::optional<Gender> gender;
  std::optional<double> age;     // years
  std::optional<double> height;  // m
  std::optional<double> weight;  // kg
  std::optional<double> pelvis_width;
  std::optional<double> hip_center_distance;
  std::optional<double> shoulder_center_distance;
  std::optional<double> foot_length;
  std::optional<double> foot_width;
  std::optional<double> heel_ankle_offset;
  std::optional<double> ankle_height;

  bool operator==(const AnthropometryProfile&) const = default;
};

enum class ScalingAlgorithm {
  kDeLeva3SegTorso,
  kDeLevaFusedTorso,
  kDeLevaSagittal,
  kJensenChild,
  kCustom,
};

std::optional<ScalingAlgorithm> scaling_algorithm_from_string(const std::string& id);
std::string to_string(ScalingAlgorithm algorithm);

// Per-segment regression coefficients. Regression rows hold fractions of
// height/body mass; child rows hold the age-linear mass form a + b*age and no
// length fraction (lengths are measured).
struct ScalingTable {
  struct RegressionRow {
    double length_fraction = 0;  // of height
    double mass_fraction = 0;    // of body mass
    double com_fraction = 0;     // of segment length, along -Z from the proximal joint
    Vec3 rgyr;                   // gyration radius fractions about x/y/z
    bool operator==(const RegressionRow&) const = default;
  };
  struct ChildRow {
    double a = 0, b = 0;  // mass_fraction = a + b*age
    double com_fraction = 0;
    Vec3 rgyr;
    bool operator==(const ChildRow&) const = default;
  };

  ScalingAlgorithm algorithm = ScalingAlgorithm::kCustom;
  std::map<std::string, std::map<Gender, RegressionRow>> regression;
  std::map<std::string, ChildRow> child;

  bool is_child_table() const { return !child.empty(); }
  bool operator==(const ScalingTable&) const = default;
};

// Scaled per-segment defaults. com_fraction and rgyr are kept so custom
// length scaling can recompute CoM and inertia consistently.
struct SegmentDefaults {
  std::string segment_type;
  double length = 0;  // m
  double mass = 0;    // kg
  Vec3 com;           // m, local frame
  Mat3 inertia;       // kg m^2 about CoM, local axes
  double com_fraction = 0;
  Vec3 rgyr;
};

// length = length_fraction*height, mass = mass_fraction*weight,
// com = (0,0,-com_fraction*length), I_axis = mass*(rgyr_axis*length)^2.
std::vector<SegmentDefaults> scale_segments_regression(const ScalingTable& table,
                                                       const AnthropometryProfile& profile,
                                                       Diagnostics& diags);

// Child variant: mass = (a + b*age)*weight, lengths supplied per segment.
std::vector<SegmentDefaults> scale_segments_child(const ScalingTable& table,
                                                  const AnthropometryProfile& profile,
                                                  const std::map<std::string, double>& lengths,
                                                  Diagnostics& diags);

// Replaces lengths with lcustom and redistributes masses so the total stays
// equal to the subject weight; CoM and inertia are recomputed from the stored
// fractions.
std::vector<SegmentDefaults> apply_custom_lengths(const std::vector<SegmentDefaults>& defaults,
                                                  const std::map<std::string, double>& lcustom,
                                                  double total_mass, Diagnostics& diags);

// Transverse joint-center offsets keyed by child segment type. Requires
// hip/shoulder center distances when the corresponding left/right segment
// types are present.
std::map<std::string, Vec3> compute_joint_offsets(const AnthropometryProfile& profile,
                                                  const std::set<std::string>& segment_types,
                                                  Diagnostics& diags);

// Absolute foot landmark positions (m) from measured anthropometry, keyed by
// built-in foot point names. Empty when the profile lacks foot dimensions.
std::map<std::string, Vec3> foot_point_overrides(const AnthropometryProfile& profile);

}  // namespace modelforge

#endif  // MODELFORGE_ANTHROPOMETRY_HPP_
