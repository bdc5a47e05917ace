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

#include "modelforge/anthropometry.hpp"

#include <cmath>

namespace modelforge {
namespace {

Mat3 gyration_inertia(double mass, double length, const Vec3& rgyr) {
  auto entry = [&](double fraction) {
    double r = fraction * length;
    return mass * r * r;
  };
  return Mat3::diagonal(entry(rgyr.x), entry(rgyr.y), entry(rgyr.z));
}

SegmentDefaults make_defaults(const std::string& type, double length, double mass,
                              double com_fraction, const Vec3& rgyr) {
  SegmentDefaults d;
  d.segment_type = type;
  d.length = length;
  d.mass = mass;
  d.com = {0, 0, -com_fraction * length};
  d.inertia = gyration_inertia(mass, length, rgyr);
  d.com_fraction = com_fraction;
  d.rgyr = rgyr;
  return d;
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

std::optional<ScalingAlgorithm> scaling_algorithm_from_string(const std::string& id) {
  if (id == "deleva_3seg_torso") return ScalingAlgorithm::kDeLeva3SegTorso;
  if (id == "deleva_fused_torso") return ScalingAlgorithm::kDeLevaFusedTorso;
  if (id == "deleva_sagittal") return ScalingAlgorithm::kDeLevaSagittal;
  if (id == "jensen_child") return ScalingAlgorithm::kJensenChild;
  if (id == "custom") return ScalingAlgorithm::kCustom;
  return std::nullopt;
}

std::string to_string(ScalingAlgorithm algorithm) {
  switch (algorithm) {
    case ScalingAlgorithm::kDeLeva3SegTorso: return "deleva_3seg_torso";
    case ScalingAlgorithm::kDeLevaFusedTorso: return "deleva_fused_torso";
    case ScalingAlgorithm::kDeLevaSagittal: return "deleva_sagittal";
    case ScalingAlgorithm::kJensenChild: return "jensen_child";
    case ScalingAlgorithm::kCustom: return "custom";
  }
  return "custom";
}

std::vector<SegmentDefaults> scale_segments_regression(const ScalingTable& table,
                                                       const AnthropometryProfile& profile,
                                                       Diagnostics& diags) {
  std::vector<SegmentDefaults> out;
  if (!profile.gender) {
    diags.error(DiagCode::kMissingAnthropometry, "gender is required by regression scaling");
    return out;
  }
  if (!profile.height) {
    diags.error(DiagCode::kMissingAnthropometry, "height is required by regression scaling");
    return out;
  }
  if (!profile.weight) {
    diags.error(DiagCode::kMissingAnthropometry, "weight is required by regression scaling");
    return out;
  }
  for (const auto& [type, per_gender] : table.regression) {
    auto it = per_gender.find(*profile.gender);
    if (it == per_gender.end()) {
      diags.error(DiagCode::kBadScalingTable,
                  "segment type '" + type + "' has no row for the requested gender");
      continue;
    }
    const ScalingTable::RegressionRow& row = it->second;
    out.push_back(make_defaults(type, row.length_fraction * *profile.height,
                                row.mass_fraction * *profile.weight, row.com_fraction, row.rgyr));
  }
  return out;
}

std::vector<SegmentDefaults> scale_segments_child(const ScalingTable& table,
                                                  const AnthropometryProfile& profile,
                                                  const std::map<std::string, double>& lengths,
                                                  Diagnostics& diags) {
  std::vector<SegmentDefaults> out;
  if (!profile.age) {
    diags.error(DiagCode::kMissingAnthropometry, "age is required by child scaling");
    return out;
  }
  if (!profile.weight) {
    diags.error(DiagCode::kMissingAnthropometry, "weight is required by child scaling");
    return out;
  }
  for (const auto& [type, row] : table.child) {
    auto it = lengths.find(type);
    if (it == lengths.end()) {
      diags.error(DiagCode::kMissingSegmentLength,
                  "no measured length for segment type '" + type + "'");
      continue;
    }
    double mass = (row.a + row.b * *profile.age) * *profile.weight;
    out.push_back(make_defaults(type, it->second, mass, row.com_fraction, row.rgyr));
  }
  return out;
}

std::vector<SegmentDefaults> apply_custom_lengths(const std::vector<SegmentDefaults>& defaults,
                                                  const std::map<std::string, double>& lcustom,
                                                  double total_mass, Diagnostics& diags) {
  for (const auto& [type, length] : lcustom) {
    if (length <= 0) {
      diags.error(DiagCode::kNonPositiveLength,
                  "custom length for '" + type + "' must be positive");
      return defaults;
    }
    bool known = false;
    for (const auto& d : defaults) known = known || d.segment_type == type;
    if (!known) {
      diags.error(DiagCode::kUnknownSegmentType,
                  "custom length names unknown segment type '" + type + "'");
      return defaults;
    }
  }

  auto custom_length = [&](const SegmentDefaults& d) {
    auto it = lcustom.find(d.segment_type);
    return it == lcustom.end() ? d.length : it->second;
  };

  double unadjusted_mass = 0;
  for (const auto& d : defaults) {
    unadjusted_mass += d.mass * (custom_length(d) / d.length);
  }
  if (unadjusted_mass == 0) {
    diags.error(DiagCode::kZeroUnadjustedMass,
                "cannot redistribute mass: all default segment masses are zero");
    return defaults;
  }

  std::vector<SegmentDefaults> out;
  out.reserve(defaults.size());
  for (const auto& d : defaults) {
    double length = custom_length(d);
    double mass = d.mass * (length / d.length) * (total_mass / unadjusted_mass);
    out.push_back(make_defaults(d.segment_type, length, mass, d.com_fraction, d.rgyr));
  }
  return out;
}

std::map<std::string, Vec3> compute_joint_offsets(const AnthropometryProfile& profile,
                                                  const std::set<std::string>& segment_types,
                                                  Diagnostics& diags) {
  std::map<std::string, Vec3> offsets;

  auto lateral_pair = [&](const std::string& stem, const std::optional<double>& distance,
                          const char* field) {
    bool right = false, left = false;
    for (const auto& type : segment_types) {
      if (type.rfind(stem, 0) == 0 && ends_with(type, "_R")) right = true;
      if (type.rfind(stem, 0) == 0 && ends_with(type, "_L")) left = true;
    }
    if (!right && !left) return;  // sagittal model: transverse values unnecessary
    if (!distance) {
      diags.error(DiagCode::kMissingAnthropometry,
                  std::string(field) + " is required for a model with left/right " + stem +
                      " segments");
      return;
    }
    // Y axis points left.
    if (right) offsets[stem + "_R"] = {0, -*distance / 2, 0};
    if (left) offsets[stem + "_L"] = {0, *distance / 2, 0};
  };

  lateral_pair("Thigh", profile.hip_center_distance, "hipCenterDistance");
  lateral_pair("UpperArm", profile.shoulder_center_distance, "shoulderCenterDistance");
  return offsets;
}

std::map<std::string, Vec3> foot_point_overrides(const AnthropometryProfile& profile) {
  std::map<std::string, Vec3> out;
  if (!profile.heel_ankle_offset || !profile.ankle_height || !profile.foot_length) {
    return out;
  }
  double heel_x = -*profile.heel_ankle_offset;
  double toe_x = *profile.foot_length - *profile.heel_ankle_offset;
  double z = -*profile.ankle_height;

  out["Heel_Sagittal"] = {heel_x, 0, z};
  out["Toe_Sagittal"] = {toe_x, 0, z};
  out["Heel_R"] = {heel_x, 0, z};
  out["Heel_L"] = {heel_x, 0, z};
  if (profile.foot_width) {
    double half = *profile.foot_width / 2;
    out["Toe_Medial_R"] = {toe_x, half, z};
    out["Toe_Lateral_R"] = {toe_x, -half, z};
    out["Toe_Medial_L"] = {toe_x, -half, z};
    out["Toe_Lateral_L"] = {toe_x, half, z};
  } else {
    out["Toe_Medial_R"] = {toe_x, 0, z};
    out["Toe_Lateral_R"] = {toe_x, 0, z};
    out["Toe_Medial_L"] = {toe_x, 0, z};
    out["Toe_Lateral_L"] = {toe_x, 0, z};
  }
  return out;
}

}  // namespace modelforge
